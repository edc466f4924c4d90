#pragma once

// Raw score -> normalized score in [-1, 1] -> one of nine categories, plus
// the binary collapse used against positive/negative gold labels.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bsps/error.hpp"

namespace bsps {

/// Raw scores within this distance of zero count as neutral.
inline constexpr double kNeutralEpsilon = 1e-9;

/// Ordered from most positive to most negative.
enum class SentimentCategory {
  ExtremelyPositive,
  ConsiderablyPositive,
  Positive,
  SlightlyPositive,
  Neutral,
  SlightlyNegative,
  Negative,
  ConsiderablyNegative,
  ExtremelyNegative,
};

inline constexpr std::array<SentimentCategory, 9> kAllCategories = {
    SentimentCategory::ExtremelyPositive, SentimentCategory::ConsiderablyPositive, SentimentCategory::Positive,
    SentimentCategory::SlightlyPositive,  SentimentCategory::Neutral,              SentimentCategory::SlightlyNegative,
    SentimentCategory::Negative,          SentimentCategory::ConsiderablyNegative, SentimentCategory::ExtremelyNegative};

inline constexpr std::string_view category_name(SentimentCategory c) {
  switch (c) {
    case SentimentCategory::ExtremelyPositive: return "Extremely Positive";
    case SentimentCategory::ConsiderablyPositive: return "Considerably Positive";
    case SentimentCategory::Positive: return "Positive";
    case SentimentCategory::SlightlyPositive: return "Slightly Positive";
    case SentimentCategory::Neutral: return "Neutral";
    case SentimentCategory::SlightlyNegative: return "Slightly Negative";
    case SentimentCategory::Negative: return "Negative";
    case SentimentCategory::ConsiderablyNegative: return "Considerably Negative";
    case SentimentCategory::ExtremelyNegative: return "Extremely Negative";
  }
  return "Neutral";
}

inline std::optional<SentimentCategory> parse_category(std::string_view name) {
  for (auto c : kAllCategories) {
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

inline std::vector<std::string> category_labels() {
  std::vector<std::string> labels;
  for (auto c : kAllCategories) labels.emplace_back(category_name(c));
  return labels;
}

inline bool is_positive(SentimentCategory c) { return c < SentimentCategory::Neutral; }
inline bool is_negative(SentimentCategory c) { return c > SentimentCategory::Neutral; }

enum class BinaryLabel { Positive, Negative };

inline constexpr std::string_view binary_name(BinaryLabel label) {
  return label == BinaryLabel::Positive ? "positive" : "negative";
}

inline std::optional<BinaryLabel> parse_binary(std::string_view text) {
  if (text == "positive") return BinaryLabel::Positive;
  if (text == "negative") return BinaryLabel::Negative;
  return std::nullopt;
}

/// Upper edges of the four positive bins, ascending in (0, 1] and ending at
/// 1. Negative bins mirror them.
struct BinConfig {
  std::array<double, 4> positive_edges{0.25, 0.5, 0.75, 1.0};

  void validate() const {
    double previous = 0.0;
    for (double e : positive_edges) {
      if (!std::isfinite(e) || !(e > previous) || e > 1.0) {
        throw ContractError("bin edges must be strictly ascending within (0, 1]");
      }
      previous = e;
    }
    if (positive_edges.back() != 1.0) throw ContractError("last bin edge must be 1");
  }

  /// Mirrored edges in [-1, 0), ascending.
  std::array<double, 4> negative_edges() const {
    return {-positive_edges[3], -positive_edges[2], -positive_edges[1], -positive_edges[0]};
  }

  friend bool operator==(const BinConfig&, const BinConfig&) = default;
};

/// Parses "E1,E2,E3,E4".
inline BinConfig parse_bins(std::string_view text) {
  BinConfig bins;
  std::size_t index = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto field = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
    if (index >= bins.positive_edges.size()) throw ContractError("expected exactly four bin edges");
    try {
      std::size_t used = 0;
      const std::string s(field);
      bins.positive_edges[index] = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ContractError("bad bin edge '" + std::string(field) + "'");
    }
    ++index;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (index != bins.positive_edges.size()) throw ContractError("expected exactly four bin edges");
  bins.validate();
  return bins;
}

inline nlohmann::ordered_json to_json(const BinConfig& bins) {
  const auto neg = bins.negative_edges();
  return {{"positive_edges", bins.positive_edges},
          {"negative_edges", neg},
          {"neutral", "raw score within 1e-9 of 0"}};
}

struct NormalizationScale {
  double max_positive = 0.0;
  double max_negative_magnitude = 0.0;

  void validate() const {
    if (!std::isfinite(max_positive) || max_positive < 0.0 || !std::isfinite(max_negative_magnitude) ||
        max_negative_magnitude < 0.0) {
      throw ContractError("normalization scale must be finite and non-negative");
    }
  }

  friend bool operator==(const NormalizationScale&, const NormalizationScale&) = default;
};

inline nlohmann::ordered_json to_json(const NormalizationScale& scale) {
  return {{"max_positive", scale.max_positive}, {"max_negative_magnitude", scale.max_negative_magnitude}};
}

inline NormalizationScale scale_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("max_positive") || !doc.contains("max_negative_magnitude") ||
      !doc["max_positive"].is_number() || !doc["max_negative_magnitude"].is_number()) {
    throw FormatError("scale file must be {\"max_positive\": r, \"max_negative_magnitude\": r}");
  }
  NormalizationScale scale{doc["max_positive"].get<double>(), doc["max_negative_magnitude"].get<double>()};
  scale.validate();
  return scale;
}

inline NormalizationScale fit_scale(std::span<const double> raw_scores) {
  NormalizationScale scale;
  for (double r : raw_scores) {
    if (r > 0.0) scale.max_positive = std::max(scale.max_positive, r);
    if (r < 0.0) scale.max_negative_magnitude = std::max(scale.max_negative_magnitude, -r);
  }
  return scale;
}

/// Per-sign max scaling into [-1, 1]; zero stays zero.
inline double normalize(double raw, const NormalizationScale& scale) {
  if (std::isnan(raw)) throw ContractError("cannot normalize NaN");
  if (std::abs(raw) <= kNeutralEpsilon) return 0.0;
  if (raw > 0.0) {
    if (scale.max_positive <= 0.0) return 1.0;
    return std::min(raw / scale.max_positive, 1.0);
  }
  if (scale.max_negative_magnitude <= 0.0) return -1.0;
  return std::max(raw / scale.max_negative_magnitude, -1.0);
}

inline SentimentCategory categorize(double normalized, const BinConfig& bins = {}) {
  if (std::isnan(normalized) || normalized < -1.0 || normalized > 1.0) {
    throw ContractError("normalized score " + std::to_string(normalized) + " outside [-1, 1]");
  }
  if (normalized == 0.0) return SentimentCategory::Neutral;
  static constexpr std::array<SentimentCategory, 4> kPositive = {
      SentimentCategory::SlightlyPositive, SentimentCategory::Positive, SentimentCategory::ConsiderablyPositive,
      SentimentCategory::ExtremelyPositive};
  static constexpr std::array<SentimentCategory, 4> kNegative = {
      SentimentCategory::SlightlyNegative, SentimentCategory::Negative, SentimentCategory::ConsiderablyNegative,
      SentimentCategory::ExtremelyNegative};
  const double magnitude = std::abs(normalized);
  const auto& names = normalized > 0.0 ? kPositive : kNegative;
  for (std::size_t i = 0; i < bins.positive_edges.size(); ++i) {
    if (magnitude <= bins.positive_edges[i]) return names[i];
  }
  return names.back();
}

/// Ties (raw within kNeutralEpsilon of zero) go to the majority class, positive.
inline BinaryLabel collapse_binary(double raw) {
  return raw < -kNeutralEpsilon ? BinaryLabel::Negative : BinaryLabel::Positive;
}

} // namespace bsps
