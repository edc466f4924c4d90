#pragma once

// Lexicon Data Dictionary: signed polarity maps plus the special word lists
// (negation, extreme, phrase initiator, and-word, stop word) and the
// double-negation idioms that drive the scoring engine.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bsps/error.hpp"
#include "bsps/unicode.hpp"

namespace bsps {

enum class RoleKind {
  Positive,
  Negative,
  Negation,
  Extreme,
  PhraseInitiator,
  AndWord,
  StopWord,
  Unknown,
};

inline constexpr std::string_view role_name(RoleKind kind) {
  switch (kind) {
    case RoleKind::Positive: return "positive";
    case RoleKind::Negative: return "negative";
    case RoleKind::Negation: return "negation";
    case RoleKind::Extreme: return "extreme";
    case RoleKind::PhraseInitiator: return "phrase_initiator";
    case RoleKind::AndWord: return "and_word";
    case RoleKind::StopWord: return "stop_word";
    case RoleKind::Unknown: return "unknown";
  }
  return "unknown";
}

/// What a token means to the engine. `score` is non-zero only for the two
/// polarity roles.
struct TokenRole {
  RoleKind kind = RoleKind::Unknown;
  double score = 0.0;

  bool is_sentiment() const { return kind == RoleKind::Positive || kind == RoleKind::Negative; }
  friend bool operator==(const TokenRole&, const TokenRole&) = default;
};

struct LexiconEntry {
  std::string word;
  double score = 0.0;
};

using WordScores = std::map<std::string, double, std::less<>>;
using WordSet = std::set<std::string, std::less<>>;
using Idiom = std::vector<std::string>;

/// Plain lexicon contents. May violate invariants; `validate_ldd` reports
/// what is wrong and `Lexicon` only ever holds a valid instance.
struct LexiconData {
  WordScores positive;
  WordScores negative;
  WordSet negation_words;
  WordSet extreme_words;
  WordSet phrase_initiators;
  WordSet and_words;
  WordSet stop_words;
  std::vector<Idiom> double_negation_idioms;
};

struct LexiconIssue {
  enum class Kind {
    Schema,     // malformed document
    Range,      // score outside its sign range
    Overlap,    // word in two exclusive lists
    Word,       // empty, not NFC, or contains whitespace
    Idiom,      // too short or not ending in a negation word
    Duplicate,  // warning: repeated word in one list, last wins
    Shadowed,   // warning: stop word also present in a list that outranks it
    Unmatchable // warning: the tokenizer can never produce this word
  };

  Kind kind;
  std::string word;
  std::string lists;
  std::string message;

  bool is_warning() const {
    return kind == Kind::Duplicate || kind == Kind::Shadowed || kind == Kind::Unmatchable;
  }
};

inline constexpr std::string_view issue_kind_name(LexiconIssue::Kind kind) {
  using K = LexiconIssue::Kind;
  switch (kind) {
    case K::Schema: return "schema";
    case K::Range: return "range";
    case K::Overlap: return "overlap";
    case K::Word: return "word";
    case K::Idiom: return "idiom";
    case K::Duplicate: return "duplicate";
    case K::Shadowed: return "shadowed";
    case K::Unmatchable: return "unmatchable";
  }
  return "unknown";
}

struct ValidationReport {
  std::vector<LexiconIssue> issues;

  std::size_t error_count() const {
    std::size_t n = 0;
    for (const auto& issue : issues) n += issue.is_warning() ? 0 : 1;
    return n;
  }
  std::size_t warning_count() const { return issues.size() - error_count(); }
  bool ok() const { return error_count() == 0; }

  const LexiconIssue* first_error() const {
    for (const auto& issue : issues) {
      if (!issue.is_warning()) return &issue;
    }
    return nullptr;
  }

  void append(const ValidationReport& other) {
    issues.insert(issues.end(), other.issues.begin(), other.issues.end());
  }

  std::string to_string() const {
    std::ostringstream out;
    for (const auto& issue : issues) {
      out << (issue.is_warning() ? "warning" : "error") << " [" << issue_kind_name(issue.kind) << "]";
      if (!issue.word.empty()) out << " '" << issue.word << "'";
      if (!issue.lists.empty()) out << " (" << issue.lists << ")";
      out << ": " << issue.message << '\n';
    }
    return out.str();
  }
};

/// Thrown by `load_ldd` when the document has at least one error-level
/// issue. `kind()` and `word()` describe the first one; `report()` has all.
class LexiconError : public FormatError {
public:
  explicit LexiconError(ValidationReport report)
      : FormatError(describe(report)), report_(std::move(report)) {}

  LexiconIssue::Kind kind() const { return report_.first_error()->kind; }
  const std::string& word() const { return report_.first_error()->word; }
  const ValidationReport& report() const { return report_; }

private:
  static std::string describe(const ValidationReport& report) {
    const auto* first = report.first_error();
    std::string msg = "invalid lexicon: ";
    if (first == nullptr) return msg + "no error recorded";
    msg += std::string(issue_kind_name(first->kind)) + " violation";
    if (!first->word.empty()) msg += " for '" + first->word + "'";
    msg += ": " + first->message;
    if (report.error_count() > 1) msg += " (+" + std::to_string(report.error_count() - 1) + " more)";
    return msg;
  }

  ValidationReport report_;
};

namespace detail {

struct NamedSet {
  std::string_view name;
  const WordSet* words;
};

inline std::vector<NamedSet> exclusive_sets(const LexiconData& data) {
  return {{"negation_words", &data.negation_words},
          {"and_words", &data.and_words},
          {"phrase_initiators", &data.phrase_initiators},
          {"extreme_words", &data.extreme_words}};
}

inline void check_word(ValidationReport& report, const std::string& word, std::string_view list) {
  using K = LexiconIssue::Kind;
  if (word.empty()) {
    report.issues.push_back({K::Word, word, std::string(list), "word is empty"});
    return;
  }
  if (!unicode::is_nfc(word)) {
    report.issues.push_back({K::Word, word, std::string(list), "word is not NFC-normalized"});
    return;
  }
  if (unicode::contains_space(word)) {
    report.issues.push_back({K::Word, word, std::string(list), "word contains whitespace"});
    return;
  }
  if (!unicode::is_single_word(word)) {
    report.issues.push_back(
        {K::Unmatchable, word, std::string(list), "word contains characters the tokenizer treats as separators"});
  }
}

} // namespace detail

/// Reports every invariant violation of `data`. An empty error list means
/// the data can back a `Lexicon`.
inline ValidationReport validate_ldd(const LexiconData& data) {
  using K = LexiconIssue::Kind;
  ValidationReport report;

  for (const auto& [word, score] : data.positive) {
    detail::check_word(report, word, "positive");
    if (!(score > 0.0 && score <= 1.0)) {
      report.issues.push_back({K::Range, word, "positive", "score " + std::to_string(score) + " outside (0, 1]"});
    }
  }
  for (const auto& [word, score] : data.negative) {
    detail::check_word(report, word, "negative");
    if (!(score >= -1.0 && score < 0.0)) {
      report.issues.push_back({K::Range, word, "negative", "score " + std::to_string(score) + " outside [-1, 0)"});
    }
    if (data.positive.contains(word)) {
      report.issues.push_back({K::Overlap, word, "positive, negative", "word has both polarities"});
    }
  }

  const auto sets = detail::exclusive_sets(data);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const auto& word : *sets[i].words) {
      detail::check_word(report, word, sets[i].name);
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        if (sets[j].words->contains(word)) {
          report.issues.push_back(
              {K::Overlap, word, std::string(sets[i].name) + ", " + std::string(sets[j].name), "word in two exclusive lists"});
        }
      }
      for (const auto* polarity : {&data.positive, &data.negative}) {
        if (polarity->contains(word)) {
          const std::string_view pname = polarity == &data.positive ? "positive" : "negative";
          report.issues.push_back(
              {K::Overlap, word, std::string(sets[i].name) + ", " + std::string(pname), "word in two exclusive lists"});
        }
      }
    }
  }

  for (const auto& word : data.stop_words) {
    detail::check_word(report, word, "stop_words");
    std::string shadowing;
    for (const auto& set : sets) {
      if (set.words->contains(word)) shadowing = set.name;
    }
    if (data.positive.contains(word)) shadowing = "positive";
    if (data.negative.contains(word)) shadowing = "negative";
    if (!shadowing.empty()) {
      report.issues.push_back({K::Shadowed, word, "stop_words, " + shadowing,
                               "stop word is retained because " + shadowing + " outranks it"});
    }
  }

  for (const auto& idiom : data.double_negation_idioms) {
    std::string joined;
    for (const auto& word : idiom) joined += (joined.empty() ? "" : " ") + word;
    if (idiom.size() < 2) {
      report.issues.push_back({K::Idiom, joined, "double_negation_idioms", "idiom needs at least two words"});
      continue;
    }
    for (const auto& word : idiom) detail::check_word(report, word, "double_negation_idioms");
    if (!data.negation_words.contains(idiom.back())) {
      report.issues.push_back({K::Idiom, joined, "double_negation_idioms", "idiom must end with a negation word"});
    }
    for (std::size_t i = 0; i + 1 < idiom.size(); ++i) {
      if (data.stop_words.contains(idiom[i]) && !data.positive.contains(idiom[i]) &&
          !data.negative.contains(idiom[i])) {
        report.issues.push_back({K::Unmatchable, idiom[i], "double_negation_idioms, stop_words",
                                 "idiom word is removed as a stop word before scoring"});
      }
    }
  }
  return report;
}

/// Validated, immutable dictionary. Safe to share across threads.
class Lexicon {
public:
  Lexicon() = default;

  /// Throws LexiconError when `data` has any error-level issue.
  explicit Lexicon(LexiconData data) : data_(std::move(data)) {
    auto report = validate_ldd(data_);
    if (!report.ok()) throw LexiconError(std::move(report));
    warnings_ = std::move(report);
  }

  /// Role of one token, first match in the order
  /// Negation > AndWord > PhraseInitiator > Extreme > Positive > Negative > StopWord.
  TokenRole lookup(std::string_view token) const {
    if (!unicode::is_nfc(token)) {
      const std::string normalized = unicode::nfc(token);
      return lookup_normalized(normalized);
    }
    return lookup_normalized(token);
  }

  bool is_stop_word(std::string_view token) const { return lookup(token).kind == RoleKind::StopWord; }

  const LexiconData& data() const { return data_; }
  const std::vector<Idiom>& idioms() const { return data_.double_negation_idioms; }
  const ValidationReport& warnings() const { return warnings_; }

private:
  TokenRole lookup_normalized(std::string_view token) const {
    if (data_.negation_words.contains(token)) return {RoleKind::Negation, 0.0};
    if (data_.and_words.contains(token)) return {RoleKind::AndWord, 0.0};
    if (data_.phrase_initiators.contains(token)) return {RoleKind::PhraseInitiator, 0.0};
    if (data_.extreme_words.contains(token)) return {RoleKind::Extreme, 0.0};
    if (auto it = data_.positive.find(token); it != data_.positive.end()) return {RoleKind::Positive, it->second};
    if (auto it = data_.negative.find(token); it != data_.negative.end()) return {RoleKind::Negative, it->second};
    if (data_.stop_words.contains(token)) return {RoleKind::StopWord, 0.0};
    return {RoleKind::Unknown, 0.0};
  }

  LexiconData data_;
  ValidationReport warnings_;
};

inline TokenRole lookup_role(std::string_view token, const Lexicon& ldd) { return ldd.lookup(token); }

/// Lexicon document parsed into plain data plus schema and duplicate issues.
/// Invariant checks are not included; run `validate_ldd` on `data` for those.
struct ParsedLexicon {
  LexiconData data;
  ValidationReport report;
};

namespace detail {

inline constexpr std::string_view kSections[] = {"positive",          "negative",   "negation_words",
                                                 "extreme_words",     "phrase_initiators", "and_words",
                                                 "stop_words",        "double_negation_idioms"};

inline bool is_known_section(std::string_view key) {
  for (auto s : kSections) {
    if (s == key) return true;
  }
  return false;
}

inline std::string prepare_word(const std::string& raw) { return unicode::nfc(unicode::trim(raw)); }

} // namespace detail

inline ParsedLexicon parse_lexicon(std::string_view document) {
  using K = LexiconIssue::Kind;
  using json = nlohmann::ordered_json;
  ParsedLexicon parsed;
  auto& report = parsed.report;

  // Raw duplicate keys are invisible after parsing, so record them while
  // the parser walks the document.
  std::string section;
  std::set<std::string> seen_keys;
  auto callback = [&](int depth, json::parse_event_t event, json& value) {
    if (event != json::parse_event_t::key) return true;
    const auto key = value.get<std::string>();
    if (depth == 1) {
      section = key;
      seen_keys.clear();
    } else if (depth == 2 && (section == "positive" || section == "negative")) {
      if (!seen_keys.insert(key).second) {
        report.issues.push_back({K::Duplicate, key, section, "duplicate key, last occurrence wins"});
      }
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(document.begin(), document.end(), callback);
  } catch (const json::parse_error& e) {
    report.issues.push_back({K::Schema, "", "", std::string("malformed JSON: ") + e.what()});
    return parsed;
  }
  if (!doc.is_object()) {
    report.issues.push_back({K::Schema, "", "", "lexicon document must be a JSON object"});
    return parsed;
  }

  for (const auto& [key, value] : doc.items()) {
    if (!detail::is_known_section(key)) {
      report.issues.push_back({K::Schema, "", key, "unknown section"});
    }
  }

  auto read_scores = [&](std::string_view name, WordScores& out) {
    auto it = doc.find(std::string(name));
    if (it == doc.end()) return;
    if (!it->is_object()) {
      report.issues.push_back({K::Schema, "", std::string(name), "section must be an object of word to score"});
      return;
    }
    for (const auto& [raw, score] : it->items()) {
      const auto word = detail::prepare_word(raw);
      if (!score.is_number()) {
        report.issues.push_back({K::Schema, word, std::string(name), "score must be a number"});
        continue;
      }
      if (word.empty()) {
        report.issues.push_back({K::Word, raw, std::string(name), "word is empty after trimming"});
        continue;
      }
      // Raw duplicates were collapsed by the parser, so a hit here means two
      // spellings normalized to the same word.
      if (out.contains(word)) {
        report.issues.push_back({K::Duplicate, word, std::string(name), "duplicate after normalization, last occurrence wins"});
      }
      out[word] = score.get<double>();
    }
  };

  auto read_words = [&](std::string_view name, WordSet& out) {
    auto it = doc.find(std::string(name));
    if (it == doc.end()) return;
    if (!it->is_array()) {
      report.issues.push_back({K::Schema, "", std::string(name), "section must be an array of words"});
      return;
    }
    for (const auto& item : *it) {
      if (!item.is_string()) {
        report.issues.push_back({K::Schema, "", std::string(name), "list entries must be strings"});
        continue;
      }
      const auto word = detail::prepare_word(item.get<std::string>());
      if (word.empty()) {
        report.issues.push_back({K::Word, item.get<std::string>(), std::string(name), "word is empty after trimming"});
        continue;
      }
      if (!out.insert(word).second) {
        report.issues.push_back({K::Duplicate, word, std::string(name), "duplicate entry"});
      }
    }
  };

  auto& data = parsed.data;
  read_scores("positive", data.positive);
  read_scores("negative", data.negative);
  read_words("negation_words", data.negation_words);
  read_words("extreme_words", data.extreme_words);
  read_words("phrase_initiators", data.phrase_initiators);
  read_words("and_words", data.and_words);
  read_words("stop_words", data.stop_words);

  if (auto it = doc.find("double_negation_idioms"); it != doc.end()) {
    if (!it->is_array()) {
      report.issues.push_back({K::Schema, "", "double_negation_idioms", "section must be an array of word arrays"});
    } else {
      for (const auto& phrase : *it) {
        if (!phrase.is_array()) {
          report.issues.push_back({K::Schema, "", "double_negation_idioms", "idiom must be an array of words"});
          continue;
        }
        Idiom idiom;
        bool ok = true;
        for (const auto& word : phrase) {
          if (!word.is_string()) {
            ok = false;
            break;
          }
          idiom.push_back(detail::prepare_word(word.get<std::string>()));
        }
        if (!ok) {
          report.issues.push_back({K::Schema, "", "double_negation_idioms", "idiom words must be strings"});
          continue;
        }
        data.double_negation_idioms.push_back(std::move(idiom));
      }
    }
  }
  return parsed;
}

/// Full report for a document: schema and duplicate issues followed by
/// invariant violations.
inline ValidationReport validate_document(std::string_view document) {
  auto parsed = parse_lexicon(document);
  if (parsed.report.ok()) parsed.report.append(validate_ldd(parsed.data));
  return parsed.report;
}

/// Parses and validates a lexicon document. Throws LexiconError naming the
/// offending word on any schema, range, or overlap violation.
inline Lexicon load_ldd(std::string_view document) {
  auto parsed = parse_lexicon(document);
  if (!parsed.report.ok()) throw LexiconError(std::move(parsed.report));
  auto invariants = validate_ldd(parsed.data);
  if (!invariants.ok()) throw LexiconError(std::move(invariants));
  Lexicon lexicon(std::move(parsed.data));
  return lexicon;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return buffer.str();
}

inline Lexicon load_ldd_file(const std::string& path) { return load_ldd(read_text_file(path)); }

inline nlohmann::ordered_json to_json(const LexiconData& data) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["positive"] = nlohmann::ordered_json::object();
  for (const auto& [word, score] : data.positive) doc["positive"][word] = score;
  doc["negative"] = nlohmann::ordered_json::object();
  for (const auto& [word, score] : data.negative) doc["negative"][word] = score;
  auto list = [](const WordSet& words) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& w : words) arr.push_back(w);
    return arr;
  };
  doc["negation_words"] = list(data.negation_words);
  doc["extreme_words"] = list(data.extreme_words);
  doc["phrase_initiators"] = list(data.phrase_initiators);
  doc["and_words"] = list(data.and_words);
  doc["stop_words"] = list(data.stop_words);
  doc["double_negation_idioms"] = nlohmann::ordered_json::array();
  for (const auto& idiom : data.double_negation_idioms) doc["double_negation_idioms"].push_back(idiom);
  return doc;
}

inline std::string serialize(const Lexicon& lexicon) { return to_json(lexicon.data()).dump(2); }

} // namespace bsps
