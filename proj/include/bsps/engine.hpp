#pragma once

// The scoring engine. Walks a filtered token stream left to right, keeps the
// flag set, and accumulates the raw polarity score:
//
//   sentiment word          score += s            (s * extreme_multiplier after an extreme word)
//   and-word                next sentiment word joins the current conjunction group
//   phrase initiator        the next negation amplifies: score += last_base * phrase_negation_amplifier
//   negation after an       score += last_base * extreme_negation_factor
//     extreme-modified word
//   other negation          the whole conjunction group is reversed:
//                           score = score - group + group * plain_negation_multiplier
//   negation ending a       cancelled, no change
//     double-negation idiom
//
// A negation before any sentiment word is a no-op. last_base is always the
// unmodified lexicon score of the most recent sentiment word.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bsps/error.hpp"
#include "bsps/lexicon.hpp"
#include "bsps/textproc.hpp"
#include "bsps/unicode.hpp"

namespace bsps {

struct RuleConfig {
  double extreme_multiplier = 1.6;
  double phrase_negation_amplifier = 1.5;
  double extreme_negation_factor = -2.0;
  double plain_negation_multiplier = -1.0;

  void validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(extreme_multiplier) || !(extreme_multiplier > 1.0)) {
      throw ContractError("extreme_multiplier must be > 1");
    }
    if (!finite(phrase_negation_amplifier) || !(phrase_negation_amplifier > 0.0)) {
      throw ContractError("phrase_negation_amplifier must be > 0");
    }
    if (!finite(plain_negation_multiplier) || !(plain_negation_multiplier < 0.0)) {
      throw ContractError("plain_negation_multiplier must be < 0");
    }
    if (!finite(extreme_negation_factor)) throw ContractError("extreme_negation_factor must be finite");
  }

  friend bool operator==(const RuleConfig&, const RuleConfig&) = default;
};

inline nlohmann::ordered_json to_json(const RuleConfig& config) {
  return {{"extreme_multiplier", config.extreme_multiplier},
          {"phrase_negation_amplifier", config.phrase_negation_amplifier},
          {"extreme_negation_factor", config.extreme_negation_factor},
          {"plain_negation_multiplier", config.plain_negation_multiplier}};
}

/// Reads the rule constants from a JSON object; missing keys keep defaults.
inline RuleConfig rule_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FormatError("rule config must be a JSON object");
  RuleConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "bins") continue;
    double* field = nullptr;
    if (key == "extreme_multiplier") field = &config.extreme_multiplier;
    else if (key == "phrase_negation_amplifier") field = &config.phrase_negation_amplifier;
    else if (key == "extreme_negation_factor") field = &config.extreme_negation_factor;
    else if (key == "plain_negation_multiplier") field = &config.plain_negation_multiplier;
    else throw FormatError("unknown rule config key '" + key + "'");
    if (!value.is_number()) throw FormatError("rule config key '" + key + "' must be a number");
    *field = value.get<double>();
  }
  config.validate();
  return config;
}

struct EngineFlags {
  bool neg = false;
  bool pos_word = false;
  bool neg_word = false;
  bool extreme = false;
  bool phrase = false;
  bool pure_pos = false;
  bool pure_neg = false;
  bool and_word = false;
  bool double_word = false;

  friend bool operator==(const EngineFlags&, const EngineFlags&) = default;
};

inline std::string to_string(const EngineFlags& f) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(f.neg, "neg");
  add(f.pos_word, "pos-word");
  add(f.neg_word, "neg-word");
  add(f.extreme, "extreme");
  add(f.phrase, "phrase");
  add(f.pure_pos, "pure-pos");
  add(f.pure_neg, "pure-neg");
  add(f.and_word, "and");
  add(f.double_word, "double");
  return out;
}

struct EngineState {
  double score = 0.0;
  EngineFlags flags;
  double group_score = 0.0;  ///< current contribution of the latest conjunction group
  double last_base = 0.0;    ///< lexicon score of the latest sentiment word, pre-extreme
  bool seen_sentiment = false;
  bool last_extreme_modified = false;
  bool previous_was_and = false;
  bool saw_positive = false;
  bool saw_negative = false;
  bool modified = false;
};

enum class StepAction {
  None,
  Add,
  ExtremeAdd,
  PhraseAmplify,
  ExtremeNegate,
  GroupNegate,
  DoubleNegationCancel,
  NegationWithoutTarget,
};

struct TraceStep {
  std::string token;
  TokenRole role;
  StepAction action = StepAction::None;
  double score_after = 0.0;
  std::string location;
  std::string calculation;
  EngineFlags flags;
};

struct ScoreTrace {
  std::vector<TraceStep> steps;
};

struct ScoreResult {
  double score = 0.0;
  ScoreTrace trace;
};

/// Short decimal rendering used in traces: six significant digits, no "-0".
inline std::string format_number(double value) {
  if (std::abs(value) < 5e-13) value = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

inline std::string_view location_label(RoleKind kind) {
  switch (kind) {
    case RoleKind::Positive: return "Positive-Lexicon";
    case RoleKind::Negative: return "Negative Lexicon";
    case RoleKind::Negation: return "Direct Negation";
    case RoleKind::Extreme: return "Extreme Word";
    case RoleKind::PhraseInitiator: return "Phrase-Initial";
    case RoleKind::AndWord: return "and-word";
    case RoleKind::StopWord: return "Stop Word";
    case RoleKind::Unknown: return "None";
  }
  return "None";
}

namespace detail {

inline std::string term(double v) {
  return v < 0 ? "(" + format_number(v) + ")" : format_number(v);
}

inline bool ends_idiom(const std::vector<std::string>& words, std::size_t index, const std::vector<Idiom>& idioms) {
  for (const auto& idiom : idioms) {
    if (idiom.size() < 2 || idiom.size() > index + 1) continue;
    const std::size_t start = index + 1 - idiom.size();
    if (std::equal(idiom.begin(), idiom.end(), words.begin() + static_cast<std::ptrdiff_t>(start))) return true;
  }
  return false;
}

} // namespace detail

/// Scores an already-filtered word sequence. Stop words that reach this
/// point behave like unknown words.
inline ScoreResult score_words(const std::vector<std::string>& words, const Lexicon& ldd, const RuleConfig& config) {
  EngineState st;
  ScoreResult result;
  result.trace.steps.reserve(words.size());

  for (std::size_t i = 0; i < words.size(); ++i) {
    const TokenRole role = ldd.lookup(words[i]);
    TraceStep step;
    step.token = words[i];
    step.role = role;
    step.location = location_label(role.kind);
    step.calculation = "None";
    const double before = st.score;

    switch (role.kind) {
      case RoleKind::Positive:
      case RoleKind::Negative: {
        const double base = role.score;
        double contribution = base;
        if (st.flags.extreme) {
          contribution = base * config.extreme_multiplier;
          step.action = StepAction::ExtremeAdd;
          step.calculation = before == 0.0 ? format_number(base) + " * " + format_number(config.extreme_multiplier)
                                           : format_number(before) + " + (" + format_number(base) + " * " +
                                                 format_number(config.extreme_multiplier) + ")";
          st.flags.extreme = false;
          st.last_extreme_modified = true;
          st.modified = true;
        } else {
          step.action = StepAction::Add;
          step.calculation = format_number(before) + " + " + detail::term(base);
          st.last_extreme_modified = false;
        }
        st.score += contribution;
        st.group_score = st.previous_was_and ? st.group_score + contribution : contribution;
        st.last_base = base;
        st.seen_sentiment = true;
        if (role.kind == RoleKind::Positive) {
          st.flags.pos_word = true;
          st.saw_positive = true;
        } else {
          st.flags.neg_word = true;
          st.saw_negative = true;
        }
        break;
      }
      case RoleKind::Extreme:
        st.flags.extreme = true;
        break;
      case RoleKind::AndWord:
        st.flags.and_word = true;
        st.flags.double_word = true;
        break;
      case RoleKind::PhraseInitiator:
        st.flags.phrase = true;
        break;
      case RoleKind::Negation: {
        st.flags.neg = true;
        if (detail::ends_idiom(words, i, ldd.idioms())) {
          step.action = StepAction::DoubleNegationCancel;
          step.calculation = "None (double negation)";
        } else if (!st.seen_sentiment) {
          step.action = StepAction::NegationWithoutTarget;
        } else if (st.flags.phrase) {
          const double sign = st.last_base < 0 ? -1.0 : 1.0;
          const double contribution = std::abs(st.last_base) * config.phrase_negation_amplifier * sign;
          st.score += contribution;
          st.group_score += contribution;
          st.flags.phrase = false;
          st.modified = true;
          step.action = StepAction::PhraseAmplify;
          step.calculation = format_number(before) + " + " + detail::term(st.last_base) + " * " +
                             format_number(config.phrase_negation_amplifier);
        } else if (st.last_extreme_modified) {
          const double contribution = st.last_base * config.extreme_negation_factor;
          st.score += contribution;
          st.group_score += contribution;
          st.last_extreme_modified = false;
          st.modified = true;
          step.action = StepAction::ExtremeNegate;
          step.calculation = format_number(before) + " + (" + format_number(st.last_base) + " * " +
                             format_number(config.extreme_negation_factor) + ")";
        } else {
          const double group = st.group_score;
          st.score = st.score - group + group * config.plain_negation_multiplier;
          st.group_score = group * config.plain_negation_multiplier;
          st.modified = true;
          step.action = StepAction::GroupNegate;
          const double rest = before - group;
          step.calculation = std::abs(rest) < 1e-12
                                 ? format_number(group) + " * " + format_number(config.plain_negation_multiplier)
                                 : format_number(rest) + " + (" + format_number(group) + " * " +
                                       format_number(config.plain_negation_multiplier) + ")";
        }
        break;
      }
      case RoleKind::StopWord:
      case RoleKind::Unknown:
        break;
    }

    st.previous_was_and = role.kind == RoleKind::AndWord;
    if (role.kind != RoleKind::AndWord) {
      st.flags.and_word = false;
      st.flags.double_word = false;
    }
    st.flags.pure_pos = st.saw_positive && !st.saw_negative && !st.modified;
    st.flags.pure_neg = st.saw_negative && !st.saw_positive && !st.modified;

    step.score_after = st.score;
    step.flags = st.flags;
    st.flags.neg = false;
    result.trace.steps.push_back(std::move(step));
  }

  result.score = st.score;
  return result;
}

inline ScoreResult score_tokens(const TokenStream& tokens, const Lexicon& ldd, const RuleConfig& config) {
  return score_words(tokens.words(), ldd, config);
}

/// Full pipeline for one raw review.
inline ScoreResult score_review(std::string_view text, const Lexicon& ldd, const RuleConfig& config) {
  return score_tokens(preprocess(text, ldd), ldd, config);
}

/// Four-column plain-text table: Token | Location | Score | Calculation.
inline std::string render_trace(const ScoreTrace& trace) {
  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"Token", "Location", "Score", "Calculation"});
  for (const auto& step : trace.steps) {
    rows.push_back({step.token, step.location, format_number(step.score_after), step.calculation});
  }
  std::array<std::size_t, 4> widths{};
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < 4; ++c) widths[c] = std::max(widths[c], unicode::display_width(row[c]));
  }

  std::ostringstream out;
  auto emit = [&](const std::array<std::string, 4>& row) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (c > 0) out << " | ";
      out << row[c];
      if (c + 1 < 4) out << std::string(widths[c] - unicode::display_width(row[c]), ' ');
    }
    out << '\n';
  };
  emit(rows.front());
  for (std::size_t c = 0; c < 4; ++c) {
    if (c > 0) out << "-+-";
    out << std::string(widths[c], '-');
  }
  out << '\n';
  for (std::size_t r = 1; r < rows.size(); ++r) emit(rows[r]);
  return out.str();
}

} // namespace bsps
