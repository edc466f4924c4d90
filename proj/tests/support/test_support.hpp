#pragma once

// Shared fixtures for the test suites.

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "bsps/bsps.hpp"

#ifndef BSPS_DATA_DIR
#error "BSPS_DATA_DIR must point at the repository data/ directory"
#endif

namespace bsps::testing {

inline std::string data_path(const std::string& name) { return std::string(BSPS_DATA_DIR) + "/" + name; }

inline const Lexicon& starter_lexicon() {
  static const Lexicon lexicon = load_ldd_file(data_path("starter_lexicon.json"));
  return lexicon;
}

/// Sentences whose filtered tokens match the three worked examples.
inline constexpr const char* kExampleOne = "খাবারটা ভালো এবং সুস্বাদু ছিল না";
inline constexpr const char* kExampleTwo = "এতটাই ভালো যে বিশ্বাস করা যায় না";
inline constexpr const char* kExampleThree = "ব্যাগটা খুব খারাপ না";

/// brother, shirt, price, considering, very, nice, and, seller, brother, good, looking!
inline constexpr const char* kShirtReview = "ভাই, শার্ট দাম হিসেবে অনেক সুন্দর, আর বিক্রেতা ভাই ভালো দেখতে!";

/// One word per role; letters keep them distinct and tokenizer-safe.
struct ToyWords {
  static constexpr const char* positive = "pos";
  static constexpr const char* negative = "neg";
  static constexpr const char* negation = "not";
  static constexpr const char* extreme = "very";
  static constexpr const char* phrase = "somuch";
  static constexpr const char* conj = "and";
  static constexpr const char* stop = "the";
  static constexpr const char* unknown = "bag";
};

inline constexpr double kToyPositive = 0.9;
inline constexpr double kToyNegative = -0.7;

inline LexiconData toy_lexicon_data(bool with_idiom) {
  LexiconData d;
  d.positive[ToyWords::positive] = kToyPositive;
  d.negative[ToyWords::negative] = kToyNegative;
  d.negation_words.insert(ToyWords::negation);
  d.extreme_words.insert(ToyWords::extreme);
  d.phrase_initiators.insert(ToyWords::phrase);
  d.and_words.insert(ToyWords::conj);
  d.stop_words.insert(ToyWords::stop);
  if (with_idiom) d.double_negation_idioms.push_back({ToyWords::unknown, ToyWords::negation});
  return d;
}

inline std::vector<std::string> toy_vocabulary() {
  return {ToyWords::positive, ToyWords::negative, ToyWords::negation, ToyWords::extreme,
          ToyWords::phrase,   ToyWords::conj,     ToyWords::stop,     ToyWords::unknown};
}

/// Every sequence of length 1..max_len over `vocab`, shortest first.
inline std::vector<std::vector<std::string>> all_sequences(const std::vector<std::string>& vocab, std::size_t max_len) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::vector<std::string>> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : frontier) {
      for (const auto& w : vocab) {
        auto seq = prefix;
        seq.push_back(w);
        next.push_back(seq);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("bsps-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
  std::filesystem::path path_;
};

} // namespace bsps::testing
