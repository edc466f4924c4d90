#include <catch_amalgamated.hpp>

#include <random>

#include "support/test_support.hpp"

using namespace bsps;
using bsps::testing::starter_lexicon;

namespace {

std::vector<std::string> words_of(std::string_view text) { return normalize_tokens(tokenize(text)).words(); }

// Random text drawn from Bengali letters, marks, digits, Latin, joiners,
// punctuation, and whitespace.
std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "ক", "খ", "ভা", "লো", "া", "ি", "্", "ং", "০", "৭", "a", "Z", "7", "\u200C", "\u200D", " ", "  ", "\t", "\n",
      ",", "!", "।", "?", "\"", "-", "\u09AF\u09BC", "\u09DF", "\U0001F600", " "};
  std::uniform_int_distribution<std::size_t> len(0, 24), pick(0, pieces.size() - 1);
  std::string out;
  for (std::size_t n = len(rng); n > 0; --n) out += pieces[pick(rng)];
  return out;
}

} // namespace

TEST_CASE("shirt review tokenizes into eleven words", "[textproc]") {
  const auto words = words_of(bsps::testing::kShirtReview);
  const std::vector<std::string> expected = {"ভাই", "শার্ট", "দাম", "হিসেবে", "অনেক", "সুন্দর",
                                             "আর",  "বিক্রেতা", "ভাই", "ভালো",  "দেখতে"};
  CHECK(words == expected);
}

TEST_CASE("stop-listed conjunction is removed from the shirt review", "[textproc]") {
  const auto words = preprocess(bsps::testing::kShirtReview, starter_lexicon()).words();
  REQUIRE(words.size() == 10);
  CHECK(std::find(words.begin(), words.end(), "আর") == words.end());
}

TEST_CASE("punctuation never reaches a token", "[textproc]") {
  CHECK(words_of("ভালো!!") == std::vector<std::string>{"ভালো"});
  CHECK(words_of("দেখতে!") == std::vector<std::string>{"দেখতে"});
  CHECK(words_of("!!!").empty());
  CHECK(words_of("").empty());
  CHECK(words_of(" \t\n").empty());
  CHECK(words_of("ভালো।খারাপ") == std::vector<std::string>{"ভালো", "খারাপ"});
}

TEST_CASE("normalization strips punctuation inside a hand-built token", "[textproc]") {
  TokenStream raw{{{"দেখতে!", 0, 0}, {"!!!", 0, 0}, {"\u200Cভালো\u200C", 0, 0}}};
  CHECK(normalize_tokens(raw).words() == std::vector<std::string>{"দেখতে", "ভালো"});
}

TEST_CASE("token spans are byte offsets into the original text", "[textproc]") {
  const std::string text = "ab, ভালো!";
  const auto stream = tokenize(text);
  REQUIRE(stream.size() == 2);
  for (const auto& t : stream.tokens) CHECK(text.substr(t.begin, t.end - t.begin) == t.text);
}

TEST_CASE("interior joiners stay, edge joiners go", "[textproc]") {
  CHECK(words_of("\u09B0\u200D\u09AF\u09BE") == std::vector<std::string>{"\u09B0\u200D\u09AF\u09BE"});
  CHECK(words_of("\u200Cভালো\u200C") == std::vector<std::string>{"ভালো"});
}

TEST_CASE("precomposed YYA is normalized to its canonical decomposition", "[textproc]") {
  const std::string precomposed = "\u09DF";
  const std::string canonical = "\u09AF\u09BC";
  CHECK(words_of(precomposed) == std::vector<std::string>{canonical});
  CHECK(words_of(canonical) == std::vector<std::string>{canonical});
}

TEST_CASE("normalization is idempotent and output has no separators", "[textproc][property]") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto text = random_text(rng);
    const auto once = normalize_tokens(tokenize(text));
    CHECK(normalize_tokens(once) == once);
    for (const auto& t : once.tokens) {
      CHECK(!t.text.empty());
      CHECK(unicode::is_nfc(t.text));
      CHECK(unicode::is_single_word(t.text));
    }
  }
}

TEST_CASE("joining normalized words with spaces is a fixpoint", "[textproc][property]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto words = words_of(random_text(rng));
    std::string joined;
    for (const auto& w : words) joined += (joined.empty() ? "" : " ") + w;
    CHECK(words_of(joined) == words);
  }
}

TEST_CASE("stop word removal keeps relative order", "[textproc][property]") {
  const auto& ldd = starter_lexicon();
  const std::vector<std::string> vocab = {"আর", "ভালো", "ছিল", "না", "খারাপ", "এই", "ব্যাগ"};
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1), len(0, 12);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> words;
    for (auto n = len(rng); n > 0; --n) words.push_back(vocab[pick(rng)]);
    std::string text;
    std::vector<std::string> expected;
    for (const auto& w : words) {
      text += w + " ";
      if (ldd.lookup(w).kind != RoleKind::StopWord) expected.push_back(w);
    }
    CHECK(preprocess(text, ldd).words() == expected);
  }
}
