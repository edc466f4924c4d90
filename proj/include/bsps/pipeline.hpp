#pragma once

// Batch orchestration: parallel scoring with order-preserving output, scale
// fitting, categorization, and the run manifest written next to outputs.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bsps/classify.hpp"
#include "bsps/corpus.hpp"
#include "bsps/engine.hpp"
#include "bsps/lexicon.hpp"
#include "bsps/version.hpp"

namespace bsps {

/// Raw score per review, in input order. `workers` threads pull indices from
/// a shared counter; each result lands in its own slot, so the output does
/// not depend on scheduling.
inline std::vector<double> score_batch(std::span<const Review> reviews, const Lexicon& ldd, const RuleConfig& config,
                                       unsigned workers = 1) {
  std::vector<double> scores(reviews.size(), 0.0);
  const unsigned pool = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(reviews.size(), 1))));
  if (pool == 1) {
    for (std::size_t i = 0; i < reviews.size(); ++i) scores[i] = score_review(reviews[i].text, ldd, config).score;
    return scores;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> threads;
    threads.reserve(pool);
    for (unsigned w = 0; w < pool; ++w) {
      threads.emplace_back([&] {
        try {
          for (std::size_t i = next.fetch_add(1); i < reviews.size(); i = next.fetch_add(1)) {
            scores[i] = score_review(reviews[i].text, ldd, config).score;
          }
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return scores;
}

struct BatchOptions {
  RuleConfig rules;
  BinConfig bins;
  std::optional<NormalizationScale> scale;  ///< fitted on the batch when empty
  unsigned workers = 1;
};

struct LabeledBatch {
  std::vector<ScoredReview> scored;
  NormalizationScale scale;
  bool scale_fitted = true;
};

inline ScoredReview label_review(const Review& review, double raw, const NormalizationScale& scale, const BinConfig& bins) {
  ScoredReview s;
  s.review = review;
  s.raw_score = raw;
  s.normalized_score = normalize(raw, scale);
  s.category = categorize(s.normalized_score, bins);
  s.binary_pred = collapse_binary(raw);
  return s;
}

inline LabeledBatch label_batch(std::span<const Review> reviews, const Lexicon& ldd, const BatchOptions& options) {
  options.rules.validate();
  options.bins.validate();
  const auto raw = score_batch(reviews, ldd, options.rules, options.workers);

  LabeledBatch batch;
  batch.scale_fitted = !options.scale.has_value();
  batch.scale = options.scale ? *options.scale : fit_scale(raw);
  batch.scale.validate();
  batch.scored.reserve(reviews.size());
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    batch.scored.push_back(label_review(reviews[i], raw[i], batch.scale, options.bins));
  }
  return batch;
}

inline std::array<std::size_t, 9> category_histogram(std::span<const ScoredReview> scored) {
  std::array<std::size_t, 9> counts{};
  for (const auto& s : scored) ++counts[static_cast<std::size_t>(s.category)];
  return counts;
}

inline std::string category_histogram_csv(std::span<const ScoredReview> scored) {
  const auto counts = category_histogram(scored);
  std::string out = "category,count\n";
  for (auto c : kAllCategories) {
    out += csv_escape(category_name(c)) + ',' + std::to_string(counts[static_cast<std::size_t>(c)]) + '\n';
  }
  return out;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Everything needed to reproduce one batch output.
struct RunManifest {
  std::string command;
  std::string lexicon_path;
  std::string input_path;
  std::string output_path;
  std::vector<std::string> outputs;
  RuleConfig rules;
  BinConfig bins;
  std::string scale_source;  ///< "fitted" or the scale file path
  NormalizationScale scale;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::string started_at;
  std::string finished_at;
  LoadReport load_report;
};

inline nlohmann::ordered_json to_json(const RunManifest& m) {
  return {{"tool", "bsps"},
          {"version", kVersion},
          {"command", m.command},
          {"lexicon", m.lexicon_path},
          {"input", m.input_path},
          {"output", m.output_path},
          {"outputs", m.outputs},
          {"rules", to_json(m.rules)},
          {"bins", to_json(m.bins)},
          {"scale_source", m.scale_source},
          {"scale", to_json(m.scale)},
          {"binary_tie_rule", "raw score within 1e-9 of 0 is labeled positive"},
          {"seed", m.seed},
          {"workers", m.workers},
          {"started_at", m.started_at},
          {"finished_at", m.finished_at},
          {"load_report",
           {{"rows_read", m.load_report.rows_read},
            {"null_dropped", m.load_report.null_dropped},
            {"duplicates_dropped", m.load_report.duplicates_dropped},
            {"retained", m.load_report.retained}}}};
}

} // namespace bsps
