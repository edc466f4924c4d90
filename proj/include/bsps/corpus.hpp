#pragma once

// Dataset ingestion and persistence. Input CSV is `id,text,label`; labeled
// output adds raw/normalized scores, the nine-way category, and the binary
// prediction.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_set>
#include <vector>

#include "bsps/classify.hpp"
#include "bsps/error.hpp"
#include "bsps/lexicon.hpp"
#include "bsps/unicode.hpp"

namespace bsps {

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  ///< 1-based line where each row starts

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  }
};

/// RFC 4180 reader: comma separated, optional double-quoted fields with ""
/// escapes, LF or CRLF records, leading UTF-8 BOM ignored.
inline CsvTable parse_csv(std::string_view text, const std::string& source = "<csv>") {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  std::size_t line = 1;
  std::size_t record_line = 1;
  bool quoted = false;
  bool after_quote = false;
  bool field_started = false;
  bool header_done = false;

  auto fail = [&](const std::string& what) -> void {
    throw FormatError(source + ":" + std::to_string(line) + ": " + what);
  };
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    if (!header_done) {
      table.header = std::move(record);
      header_done = true;
    } else if (!(record.size() == 1 && record[0].empty())) {
      if (record.size() != table.header.size()) {
        throw FormatError(source + ":" + std::to_string(record_line) + ": expected " +
                          std::to_string(table.header.size()) + " fields, found " + std::to_string(record.size()));
      }
      table.rows.push_back(std::move(record));
      table.row_lines.push_back(record_line);
    }
    record.clear();
    after_quote = false;
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    if (ch == ',') {
      record.push_back(std::move(field));
      field.clear();
      after_quote = false;
      field_started = false;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
      ++line;
      record_line = line;
    } else if (ch == '"') {
      if (field_started || after_quote) fail("unexpected quote inside field");
      quoted = true;
      field_started = true;
    } else {
      if (after_quote) fail("characters after closing quote");
      field += ch;
      field_started = true;
    }
  }
  if (quoted) fail("unterminated quoted field");
  if (field_started || !record.empty() || after_quote) end_record();
  if (!header_done) fail("missing header row");
  return table;
}

inline std::string csv_escape(std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                            (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error("cannot format number");
  return std::string(buf, end);
}

inline std::optional<double> parse_double(std::string_view text) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return value;
}

inline void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("cannot write '" + path + "'");
}

// ---------------------------------------------------------------------------
// Reviews
// ---------------------------------------------------------------------------

struct Review {
  std::string id;
  std::string text;
  std::optional<BinaryLabel> gold_label;

  friend bool operator==(const Review&, const Review&) = default;
};

struct LoadReport {
  std::size_t rows_read = 0;
  std::size_t null_dropped = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t retained = 0;
};

struct Dataset {
  std::vector<Review> reviews;
  LoadReport report;
};

/// Drops rows whose text is empty or whitespace, and rows whose NFC text
/// repeats an earlier row (first occurrence kept). Text is stored NFC.
inline Dataset parse_dataset(std::string_view csv, const std::string& source = "<dataset>") {
  const auto table = parse_csv(csv, source);
  const auto id_col = table.column("id");
  const auto text_col = table.column("text");
  const auto label_col = table.column("label");
  if (!id_col || !text_col) throw FormatError(source + ": missing required column(s) 'id' and 'text'");

  Dataset dataset;
  std::unordered_set<std::string> seen_text;
  std::set<std::string> seen_ids;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = source + ":" + std::to_string(table.row_lines[r]);
    ++dataset.report.rows_read;

    Review review;
    review.id = unicode::trim(row[*id_col]);
    if (review.id.empty()) throw FormatError(where + ": empty id");
    if (label_col) {
      const auto label = unicode::trim(row[*label_col]);
      if (!label.empty()) {
        review.gold_label = parse_binary(label);
        if (!review.gold_label) throw FormatError(where + ": label must be 'positive' or 'negative', got '" + label + "'");
      }
    }
    if (unicode::trim(row[*text_col]).empty()) {
      ++dataset.report.null_dropped;
      continue;
    }
    review.text = unicode::nfc(row[*text_col]);
    if (!seen_text.insert(review.text).second) {
      ++dataset.report.duplicates_dropped;
      continue;
    }
    if (!seen_ids.insert(review.id).second) throw FormatError(where + ": duplicate id '" + review.id + "'");
    dataset.reviews.push_back(std::move(review));
  }
  dataset.report.retained = dataset.reviews.size();
  return dataset;
}

inline Dataset load_dataset(const std::string& path) { return parse_dataset(read_text_file(path), path); }

inline std::string format_dataset(std::span<const Review> reviews) {
  std::string out = "id,text,label\n";
  for (const auto& r : reviews) {
    out += csv_escape(r.id) + ',' + csv_escape(r.text) + ',' +
           (r.gold_label ? std::string(binary_name(*r.gold_label)) : std::string()) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Split
// ---------------------------------------------------------------------------

struct Split {
  std::vector<Review> train;
  std::vector<Review> test;
  bool degenerate = false;  ///< one side is empty
};

namespace detail {

// Unbiased draw in [0, bound) without relying on std::uniform_int_distribution,
// whose output differs between standard libraries.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

} // namespace detail

/// Seeded Fisher-Yates shuffle, then the first round(fraction * n) reviews
/// train and the rest test.
inline Split split_dataset(std::span<const Review> dataset, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ContractError("train fraction must be in (0, 1)");
  std::vector<std::size_t> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(detail::bounded(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  const auto train_size = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(dataset.size())));
  Split split;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < train_size ? split.train : split.test).push_back(dataset[order[i]]);
  }
  split.degenerate = split.train.empty() || split.test.empty();
  return split;
}

// ---------------------------------------------------------------------------
// Labeled output
// ---------------------------------------------------------------------------

struct ScoredReview {
  Review review;
  double raw_score = 0.0;
  double normalized_score = 0.0;
  SentimentCategory category = SentimentCategory::Neutral;
  BinaryLabel binary_pred = BinaryLabel::Positive;

  friend bool operator==(const ScoredReview&, const ScoredReview&) = default;
};

inline constexpr std::string_view kLabeledHeader = "id,text,gold_label,raw_score,normalized_score,category,binary_pred";

inline std::string format_labeled(std::span<const ScoredReview> scored) {
  std::string out(kLabeledHeader);
  out += '\n';
  for (const auto& s : scored) {
    out += csv_escape(s.review.id);
    out += ',';
    out += csv_escape(s.review.text);
    out += ',';
    if (s.review.gold_label) out += binary_name(*s.review.gold_label);
    out += ',';
    out += format_double(s.raw_score);
    out += ',';
    out += format_double(s.normalized_score);
    out += ',';
    out += csv_escape(category_name(s.category));
    out += ',';
    out += binary_name(s.binary_pred);
    out += '\n';
  }
  return out;
}

inline void write_labeled(const std::string& path, std::span<const ScoredReview> scored) {
  write_text_file(path, format_labeled(scored));
}

inline std::vector<ScoredReview> parse_labeled(std::string_view csv, const std::string& source = "<labeled>") {
  const auto table = parse_csv(csv, source);
  const char* required[] = {"id", "text", "gold_label", "raw_score", "normalized_score", "category", "binary_pred"};
  std::size_t col[7];
  for (std::size_t i = 0; i < 7; ++i) {
    auto c = table.column(required[i]);
    if (!c) throw FormatError(source + ": missing column '" + required[i] + "'");
    col[i] = *c;
  }
  std::vector<ScoredReview> out;
  out.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = source + ":" + std::to_string(table.row_lines[r]);
    ScoredReview s;
    s.review.id = row[col[0]];
    s.review.text = row[col[1]];
    if (!row[col[2]].empty()) {
      s.review.gold_label = parse_binary(row[col[2]]);
      if (!s.review.gold_label) throw FormatError(where + ": bad gold_label '" + row[col[2]] + "'");
    }
    auto raw = parse_double(row[col[3]]);
    auto norm = parse_double(row[col[4]]);
    if (!raw || !norm) throw FormatError(where + ": bad score value");
    s.raw_score = *raw;
    s.normalized_score = *norm;
    auto category = parse_category(row[col[5]]);
    if (!category) throw FormatError(where + ": bad category '" + row[col[5]] + "'");
    s.category = *category;
    auto pred = parse_binary(row[col[6]]);
    if (!pred) throw FormatError(where + ": bad binary_pred '" + row[col[6]] + "'");
    s.binary_pred = *pred;
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<ScoredReview> load_labeled(const std::string& path) { return parse_labeled(read_text_file(path), path); }

} // namespace bsps
