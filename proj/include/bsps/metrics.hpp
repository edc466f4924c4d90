#pragma once

// Confusion matrix and support-weighted precision / recall / F1.

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bsps/error.hpp"

namespace bsps {

/// Rows are gold labels, columns are predictions, both in `labels` order.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::uint64_t>> counts;

  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (const auto& row : counts)
      for (auto c : row) n += c;
    return n;
  }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

inline ConfusionMatrix confusion(const std::vector<std::string>& gold, const std::vector<std::string>& pred,
                                 const std::vector<std::string>& labels) {
  if (gold.size() != pred.size()) {
    throw ContractError("gold and prediction lengths differ (" + std::to_string(gold.size()) + " vs " +
                        std::to_string(pred.size()) + ")");
  }
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], i).second) throw ContractError("duplicate label '" + labels[i] + "'");
  }
  ConfusionMatrix m{labels, std::vector<std::vector<std::uint64_t>>(labels.size(), std::vector<std::uint64_t>(labels.size(), 0))};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    auto g = index.find(gold[i]);
    auto p = index.find(pred[i]);
    if (g == index.end()) throw ContractError("unknown gold label '" + gold[i] + "'");
    if (p == index.end()) throw ContractError("unknown predicted label '" + pred[i] + "'");
    ++m.counts[g->second][p->second];
  }
  return m;
}

struct ClassMetrics {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
  bool precision_undefined = false;  ///< nothing was predicted as this class
  bool recall_undefined = false;     ///< class absent from gold
};

struct EvalReport {
  ConfusionMatrix matrix;
  double accuracy = 0.0;
  std::vector<ClassMetrics> per_class;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
};

/// Per-class metrics use 0 for undefined ratios (flagged on the class);
/// weighted metrics average them by gold support.
inline EvalReport weighted_metrics(const ConfusionMatrix& matrix) {
  const std::size_t k = matrix.labels.size();
  if (matrix.counts.size() != k) throw ContractError("confusion matrix is not square over its labels");
  for (const auto& row : matrix.counts) {
    if (row.size() != k) throw ContractError("confusion matrix is not square over its labels");
  }
  const std::uint64_t total = matrix.total();
  if (total == 0) throw ContractError("cannot compute metrics for an empty confusion matrix");

  EvalReport report;
  report.matrix = matrix;
  std::uint64_t diagonal = 0;
  double wp = 0.0, wr = 0.0, wf = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::uint64_t row_sum = 0, col_sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      row_sum += matrix.counts[c][j];
      col_sum += matrix.counts[j][c];
    }
    const auto tp = matrix.counts[c][c];
    diagonal += tp;

    ClassMetrics m;
    m.label = matrix.labels[c];
    m.support = row_sum;
    m.precision_undefined = col_sum == 0;
    m.recall_undefined = row_sum == 0;
    m.precision = col_sum == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(col_sum);
    m.recall = row_sum == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(row_sum);
    m.f1 = (m.precision + m.recall) == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);

    const auto weight = static_cast<double>(row_sum);
    wp += weight * m.precision;
    wr += weight * m.recall;
    wf += weight * m.f1;
    report.per_class.push_back(std::move(m));
  }
  const auto n = static_cast<double>(total);
  report.accuracy = static_cast<double>(diagonal) / n;
  report.weighted_precision = wp / n;
  report.weighted_recall = wr / n;
  report.weighted_f1 = wf / n;
  return report;
}

inline nlohmann::ordered_json to_json(const EvalReport& report) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["labels"] = report.matrix.labels;
  doc["matrix"] = report.matrix.counts;
  doc["accuracy"] = report.accuracy;
  json per_class = json::object();
  for (const auto& m : report.per_class) {
    per_class[m.label] = {{"precision", m.precision},
                          {"recall", m.recall},
                          {"f1", m.f1},
                          {"support", m.support},
                          {"precision_undefined", m.precision_undefined},
                          {"recall_undefined", m.recall_undefined}};
  }
  doc["per_class"] = per_class;
  doc["weighted"] = {{"precision", report.weighted_precision},
                     {"recall", report.weighted_recall},
                     {"f1", report.weighted_f1}};
  doc["config"] = report.config;
  return doc;
}

/// Companion table for plotting: label,precision,recall,f1,support.
inline std::string per_class_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "label,precision,recall,f1,support\n";
  out.precision(17);
  for (const auto& m : report.per_class) {
    std::string label;
    for (char ch : m.label) label += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    out << '"' << label << "\"," << m.precision << ',' << m.recall << ',' << m.f1 << ',' << m.support << '\n';
  }
  return out.str();
}

inline std::string render_summary(const EvalReport& report) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-22s %9s %9s %9s %8s\n", "label", "precision", "recall", "f1", "support");
  out << line;
  for (const auto& m : report.per_class) {
    std::snprintf(line, sizeof line, "%-22s %9.4f %9.4f %9.4f %8llu\n", m.label.c_str(), m.precision, m.recall, m.f1,
                  static_cast<unsigned long long>(m.support));
    out << line;
  }
  std::snprintf(line, sizeof line, "%-22s %9.4f %9.4f %9.4f %8llu\n", "weighted", report.weighted_precision,
                report.weighted_recall, report.weighted_f1, static_cast<unsigned long long>(report.matrix.total()));
  out << line;
  std::snprintf(line, sizeof line, "accuracy %.4f\n", report.accuracy);
  out << line;
  return out.str();
}

} // namespace bsps
