// bsps: command-line front end for the lexicon scoring pipeline.
//
//   bsps score --lexicon L [--trace] [--scale S] TEXT
//   bsps run --lexicon L --input IN.csv --output OUT.csv [--workers N] [--emit-plot-data]
//   bsps export --lexicon L --input IN.csv --output OUT.csv [--train-fraction F] [--seed N]
//   bsps eval --input LABELED.csv [--gold COL] [--pred COL] [--output REPORT.json]
//   bsps validate-lexicon L
//
// Exit codes: 0 success, 1 validation or contract failure, 2 I/O failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsps/bsps.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

struct CommonOptions {
  std::string lexicon;
  std::string config;
  std::string bins;
  std::string scale;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  bool trace = false;
  bool emit_plot_data = false;
};

std::string output_base(const std::string& path) {
  if (path.size() > 4 && path.ends_with(".csv")) return path.substr(0, path.size() - 4);
  if (path.size() > 5 && path.ends_with(".json")) return path.substr(0, path.size() - 5);
  return path;
}

bsps::RuleConfig load_rules(const std::string& path, std::optional<bsps::BinConfig>* bins_from_file) {
  if (path.empty()) return {};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bsps::read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw bsps::FormatError(path + ": " + e.what());
  }
  auto rules = bsps::rule_config_from_json(doc);
  if (bins_from_file != nullptr && doc.contains("bins")) {
    const auto& b = doc["bins"];
    if (!b.is_array() || b.size() != 4) throw bsps::FormatError(path + ": 'bins' must be an array of four edges");
    bsps::BinConfig bins;
    for (std::size_t i = 0; i < 4; ++i) {
      if (!b[i].is_number()) throw bsps::FormatError(path + ": bin edges must be numbers");
      bins.positive_edges[i] = b[i].get<double>();
    }
    bins.validate();
    *bins_from_file = bins;
  }
  return rules;
}

bsps::BinConfig resolve_bins(const CommonOptions& opts, const std::optional<bsps::BinConfig>& from_config) {
  if (!opts.bins.empty()) return bsps::parse_bins(opts.bins);
  if (from_config) return *from_config;
  return {};
}

std::optional<bsps::NormalizationScale> load_scale(const std::string& path) {
  if (path.empty()) return std::nullopt;
  try {
    return bsps::scale_from_json(nlohmann::json::parse(bsps::read_text_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw bsps::FormatError(path + ": " + e.what());
  }
}

bsps::Lexicon load_lexicon(const std::string& path) {
  try {
    return bsps::load_ldd_file(path);
  } catch (const bsps::LexiconError& e) {
    std::cerr << path << ": invalid lexicon\n" << e.report().to_string();
    throw;
  }
}

int cmd_score(const CommonOptions& opts, const std::string& text) {
  const auto lexicon = load_lexicon(opts.lexicon);
  std::optional<bsps::BinConfig> config_bins;
  const auto rules = load_rules(opts.config, &config_bins);
  const auto bins = resolve_bins(opts, config_bins);
  const auto scale = load_scale(opts.scale);

  const auto result = bsps::score_review(text, lexicon, rules);
  if (opts.trace) std::cout << bsps::render_trace(result.trace);
  std::cout << "score: " << bsps::format_number(result.score) << '\n';
  if (scale) {
    const double normalized = bsps::normalize(result.score, *scale);
    std::cout << "normalized: " << bsps::format_number(normalized) << '\n';
    std::cout << "category: " << bsps::category_name(bsps::categorize(normalized, bins)) << '\n';
  }
  std::cout << "binary: " << bsps::binary_name(bsps::collapse_binary(result.score)) << '\n';
  return kExitOk;
}

int cmd_run(const CommonOptions& opts, const std::string& input, const std::string& output, bool export_mode,
            double train_fraction) {
  bsps::RunManifest manifest;
  manifest.command = export_mode ? "export" : "run";
  manifest.started_at = bsps::utc_timestamp();

  const auto lexicon = load_lexicon(opts.lexicon);
  std::optional<bsps::BinConfig> config_bins;
  bsps::BatchOptions batch_opts;
  batch_opts.rules = load_rules(opts.config, &config_bins);
  batch_opts.bins = resolve_bins(opts, config_bins);
  batch_opts.scale = load_scale(opts.scale);
  batch_opts.workers = opts.workers;

  const auto dataset = bsps::load_dataset(input);
  const auto batch = bsps::label_batch(dataset.reviews, lexicon, batch_opts);

  const std::string base = output_base(output);
  std::vector<std::string> outputs;
  bsps::write_labeled(output, batch.scored);
  outputs.push_back(output);

  const std::string scale_path = base + ".scale.json";
  bsps::write_text_file(scale_path, bsps::to_json(batch.scale).dump(2) + "\n");
  outputs.push_back(scale_path);

  if (export_mode) {
    std::vector<bsps::Review> reviews;
    reviews.reserve(batch.scored.size());
    for (const auto& s : batch.scored) reviews.push_back(s.review);
    const auto split = bsps::split_dataset(reviews, train_fraction, opts.seed);
    if (split.degenerate) std::cerr << "warning: split leaves one side empty\n";
    std::map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < batch.scored.size(); ++i) by_id.emplace(batch.scored[i].review.id, i);
    // Rows keep the shuffled order of the split.
    auto pick = [&](const std::vector<bsps::Review>& part) {
      std::vector<bsps::ScoredReview> rows;
      rows.reserve(part.size());
      for (const auto& r : part) rows.push_back(batch.scored[by_id.at(r.id)]);
      return rows;
    };
    const std::string train_path = base + ".train.csv";
    const std::string test_path = base + ".test.csv";
    bsps::write_labeled(train_path, pick(split.train));
    bsps::write_labeled(test_path, pick(split.test));
    outputs.push_back(train_path);
    outputs.push_back(test_path);
  }

  if (opts.emit_plot_data) {
    const std::string hist_path = base + ".categories.csv";
    bsps::write_text_file(hist_path, bsps::category_histogram_csv(batch.scored));
    outputs.push_back(hist_path);
  }

  manifest.lexicon_path = opts.lexicon;
  manifest.input_path = input;
  manifest.output_path = output;
  manifest.rules = batch_opts.rules;
  manifest.bins = batch_opts.bins;
  manifest.scale_source = batch.scale_fitted ? "fitted" : opts.scale;
  manifest.scale = batch.scale;
  manifest.seed = opts.seed;
  manifest.workers = opts.workers;
  manifest.load_report = dataset.report;
  manifest.outputs = outputs;
  manifest.finished_at = bsps::utc_timestamp();
  bsps::write_text_file(base + ".manifest.json", bsps::to_json(manifest).dump(2) + "\n");

  const auto& r = dataset.report;
  std::cout << "reviews: " << r.retained << " (read " << r.rows_read << ", null dropped " << r.null_dropped
            << ", duplicates dropped " << r.duplicates_dropped << ")\n";
  std::cout << "scale: max_positive " << bsps::format_number(batch.scale.max_positive) << ", max_negative_magnitude "
            << bsps::format_number(batch.scale.max_negative_magnitude) << (batch.scale_fitted ? " (fitted)" : "")
            << '\n';
  const auto hist = bsps::category_histogram(batch.scored);
  for (auto c : bsps::kAllCategories) {
    std::cout << "  " << bsps::category_name(c) << ": " << hist[static_cast<std::size_t>(c)] << '\n';
  }
  std::cout << "wrote " << output << '\n';
  return kExitOk;
}

std::vector<std::string> infer_labels(const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
  std::set<std::string> seen(gold.begin(), gold.end());
  seen.insert(pred.begin(), pred.end());
  const bool binary = std::all_of(seen.begin(), seen.end(), [](const auto& v) { return bsps::parse_binary(v).has_value(); });
  if (binary) return {"positive", "negative"};
  const bool categories =
      std::all_of(seen.begin(), seen.end(), [](const auto& v) { return bsps::parse_category(v).has_value(); });
  if (categories) return bsps::category_labels();
  return {seen.begin(), seen.end()};
}

int cmd_eval(const CommonOptions& opts, const std::string& input, const std::string& gold_col,
             const std::string& pred_col, const std::string& output) {
  const auto table = bsps::parse_csv(bsps::read_text_file(input), input);
  const auto g = table.column(gold_col);
  const auto p = table.column(pred_col);
  if (!g || !p) {
    throw bsps::FormatError(input + ": column mismatch, need '" + gold_col + "' and '" + pred_col + "'");
  }
  std::vector<std::string> gold, pred;
  std::size_t skipped = 0;
  for (const auto& row : table.rows) {
    if (row[*g].empty()) {
      ++skipped;
      continue;
    }
    gold.push_back(row[*g]);
    pred.push_back(row[*p]);
  }
  if (gold.empty()) throw bsps::ContractError(input + ": no rows with a gold label");

  auto report = bsps::weighted_metrics(bsps::confusion(gold, pred, infer_labels(gold, pred)));
  report.config = {{"input", input}, {"gold_column", gold_col}, {"pred_column", pred_col}, {"skipped_rows", skipped}};
  const std::string manifest_path = output_base(input) + ".manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    try {
      const auto manifest = nlohmann::ordered_json::parse(bsps::read_text_file(manifest_path));
      for (const char* key : {"rules", "bins", "scale", "scale_source", "seed"}) {
        if (manifest.contains(key)) report.config[key] = manifest[key];
      }
    } catch (const nlohmann::json::parse_error&) {
      std::cerr << "warning: ignoring unreadable manifest " << manifest_path << '\n';
    }
  }

  std::cout << bsps::render_summary(report);
  const auto json = bsps::to_json(report).dump(2) + "\n";
  if (output.empty()) {
    std::cout << json;
  } else {
    bsps::write_text_file(output, json);
    if (opts.emit_plot_data) {
      const auto base = output_base(output);
      bsps::write_text_file(base + ".per_class.csv", bsps::per_class_csv(report));
      std::string summary = "metric,value\n";
      summary += "accuracy," + bsps::format_double(report.accuracy) + "\n";
      summary += "weighted_precision," + bsps::format_double(report.weighted_precision) + "\n";
      summary += "weighted_recall," + bsps::format_double(report.weighted_recall) + "\n";
      summary += "weighted_f1," + bsps::format_double(report.weighted_f1) + "\n";
      bsps::write_text_file(base + ".summary.csv", summary);
    }
  }
  return kExitOk;
}

int cmd_validate(const std::string& path, bool strict) {
  const auto report = bsps::validate_document(bsps::read_text_file(path));
  std::cout << report.to_string();
  std::cout << path << ": " << report.error_count() << " error(s), " << report.warning_count() << " warning(s)\n";
  if (!report.ok()) return kExitInvalid;
  if (strict && !report.issues.empty()) return kExitInvalid;
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicon-driven sentiment polarity scoring for Bengali reviews"};
  app.set_version_flag("--version", bsps::kVersion);
  app.require_subcommand(1);

  CommonOptions opts;
  std::string text, input, output, gold_col = "gold_label", pred_col = "binary_pred", lexicon_pos;
  double train_fraction = 0.8;
  bool strict = false;

  auto add_scoring = [&](CLI::App* cmd) {
    cmd->add_option("--lexicon", opts.lexicon, "Lexicon JSON document")->required();
    cmd->add_option("--config", opts.config, "Rule constants JSON");
    cmd->add_option("--bins", opts.bins, "Positive bin edges E1,E2,E3,E4 (negatives mirrored)");
    cmd->add_option("--scale", opts.scale, "Normalization scale JSON");
  };

  auto* score = app.add_subcommand("score", "Score one review");
  add_scoring(score);
  score->add_flag("--trace", opts.trace, "Print the per-token trace table");
  score->add_option("text", text, "Review text")->required();

  auto* run = app.add_subcommand("run", "Score, normalize, and categorize a dataset");
  auto* exp = app.add_subcommand("export", "Like run, plus a seeded train/test split for fine-tuning");
  for (auto* cmd : {run, exp}) {
    add_scoring(cmd);
    cmd->add_option("--input", input, "Input CSV (id,text,label)")->required();
    cmd->add_option("--output", output, "Labeled CSV to write")->required();
    cmd->add_option("--seed", opts.seed, "Seed for every random choice");
    cmd->add_option("--workers", opts.workers, "Scoring threads")->check(CLI::Range(1u, 1024u));
    cmd->add_flag("--emit-plot-data", opts.emit_plot_data, "Write a category histogram CSV");
  }
  exp->add_option("--train-fraction", train_fraction, "Training share of the split")->check(CLI::Range(0.0, 1.0));

  auto* eval = app.add_subcommand("eval", "Evaluate predictions against gold labels");
  eval->add_option("--input", input, "Labeled CSV")->required();
  eval->add_option("--gold", gold_col, "Gold label column");
  eval->add_option("--pred", pred_col, "Prediction column");
  eval->add_option("--output", output, "Report JSON to write (stdout when omitted)");
  eval->add_flag("--emit-plot-data", opts.emit_plot_data, "Write per-class and summary CSVs next to the report");

  auto* validate = app.add_subcommand("validate-lexicon", "Check a lexicon document");
  validate->add_option("path", lexicon_pos, "Lexicon JSON document");
  validate->add_option("--lexicon", opts.lexicon, "Lexicon JSON document");
  validate->add_flag("--strict", strict, "Treat warnings as failures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*score) return cmd_score(opts, text);
    if (*run) return cmd_run(opts, input, output, false, train_fraction);
    if (*exp) return cmd_run(opts, input, output, true, train_fraction);
    if (*eval) return cmd_eval(opts, input, gold_col, pred_col, output);
    if (*validate) {
      const std::string path = !lexicon_pos.empty() ? lexicon_pos : opts.lexicon;
      if (path.empty()) {
        std::cerr << "validate-lexicon: a lexicon path is required\n";
        return kExitInvalid;
      }
      return cmd_validate(path, strict);
    }
  } catch (const bsps::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
