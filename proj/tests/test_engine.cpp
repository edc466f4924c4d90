#include <catch_amalgamated.hpp>

#include <random>

#include "support/rule_oracle.hpp"
#include "support/test_support.hpp"

using namespace bsps;
using namespace bsps::testing;
using Catch::Matchers::WithinAbs;

namespace {

struct Row {
  std::string token;
  std::string location;
  double score;
  std::string calculation;
};

void check_trace(const ScoreResult& result, const std::vector<Row>& rows) {
  REQUIRE(result.trace.steps.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    INFO("row " << i);
    const auto& step = result.trace.steps[i];
    CHECK(step.token == rows[i].token);
    CHECK(step.location == rows[i].location);
    CHECK_THAT(step.score_after, WithinAbs(rows[i].score, 1e-9));
    CHECK(step.calculation == rows[i].calculation);
  }
}

OracleLexicon toy_oracle_lexicon(bool with_idiom) {
  OracleLexicon lex;
  lex.words[ToyWords::positive] = {OracleKind::Pos, kToyPositive};
  lex.words[ToyWords::negative] = {OracleKind::Neg, kToyNegative};
  lex.words[ToyWords::negation] = {OracleKind::Negation, 0.0};
  lex.words[ToyWords::extreme] = {OracleKind::Extreme, 0.0};
  lex.words[ToyWords::phrase] = {OracleKind::Phrase, 0.0};
  lex.words[ToyWords::conj] = {OracleKind::And, 0.0};
  if (with_idiom) lex.idioms.push_back({ToyWords::unknown, ToyWords::negation});
  return lex;
}

const RuleConfig kDefaults{};

double score_of(const std::vector<std::string>& words, const Lexicon& ldd, const RuleConfig& config = kDefaults) {
  return score_words(words, ldd, config).score;
}

std::vector<std::string> random_words(std::mt19937_64& rng, std::size_t max_len) {
  static const auto vocab = toy_vocabulary();
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, vocab.size() - 1);
  std::vector<std::string> out;
  for (auto n = len(rng); n > 0; --n) out.push_back(vocab[pick(rng)]);
  return out;
}

} // namespace

TEST_CASE("conjoined group is reversed by a trailing negation", "[engine][example]") {
  const auto result = score_review(kExampleOne, starter_lexicon(), kDefaults);
  CHECK_THAT(result.score, WithinAbs(-1.6, 1e-9));
  check_trace(result, {{"খাবারটা", "None", 0.0, "None"},
                       {"ভালো", "Positive-Lexicon", 0.9, "0 + 0.9"},
                       {"এবং", "and-word", 0.9, "None"},
                       {"সুস্বাদু", "Positive-Lexicon", 1.6, "0.9 + 0.7"},
                       {"না", "Direct Negation", -1.6, "1.6 * -1"}});
}

TEST_CASE("phrase initiator turns a negation into an amplifier", "[engine][example]") {
  const auto result = score_review(kExampleTwo, starter_lexicon(), kDefaults);
  CHECK_THAT(result.score, WithinAbs(2.25, 1e-9));
  check_trace(result, {{"এতটাই", "Phrase-Initial", 0.0, "None"},
                       {"ভালো", "Positive-Lexicon", 0.9, "0 + 0.9"},
                       {"বিশ্বাস", "None", 0.9, "None"},
                       {"না", "Direct Negation", 2.25, "0.9 + 0.9 * 1.5"}});
}

TEST_CASE("negated extreme word flips to a mild opposite", "[engine][example]") {
  const auto result = score_review(kExampleThree, starter_lexicon(), kDefaults);
  CHECK_THAT(result.score, WithinAbs(0.36, 1e-9));
  check_trace(result, {{"ব্যাগটা", "None", 0.0, "None"},
                       {"খুব", "Extreme Word", 0.0, "None"},
                       {"খারাপ", "Negative Lexicon", -1.44, "-0.9 * 1.6"},
                       {"না", "Direct Negation", 0.36, "-1.44 + (-0.9 * -2)"}});
}

TEST_CASE("extreme modifier scales the next sentiment word", "[engine]") {
  const auto& ldd = starter_lexicon();
  const double hand = 0.9 * 1.6;
  CHECK(score_of({"খুব", "ভালো"}, ldd) == hand);
  CHECK_THAT(hand, WithinAbs(1.44, 1e-12));
}

TEST_CASE("idiom ending in a negation cancels it", "[engine]") {
  const auto result = score_review("খাবার ভালো বলার অপেক্ষা রাখে না", starter_lexicon(), kDefaults);
  CHECK_THAT(result.score, WithinAbs(0.9, 1e-12));
  REQUIRE(!result.trace.steps.empty());
  CHECK(result.trace.steps.back().action == StepAction::DoubleNegationCancel);
  CHECK(result.trace.steps.back().calculation == "None (double negation)");
}

TEST_CASE("degenerate inputs score zero", "[engine]") {
  const auto& ldd = starter_lexicon();
  CHECK(score_review("", ldd, kDefaults).score == 0.0);
  CHECK(score_review("ব্যাগটা টেবিল", ldd, kDefaults).score == 0.0);
  CHECK(score_review("না", ldd, kDefaults).score == 0.0);
  CHECK(score_review("খুব এতটাই এবং", ldd, kDefaults).score == 0.0);
  CHECK(score_review("", ldd, kDefaults).trace.steps.empty());
}

TEST_CASE("rendered trace lists every step", "[engine]") {
  const auto table = render_trace(score_review(kExampleThree, starter_lexicon(), kDefaults).trace);
  CHECK(table.find("Token") != std::string::npos);
  CHECK(table.find("Calculation") != std::string::npos);
  CHECK(table.find("-1.44 + (-0.9 * -2)") != std::string::npos);
}

TEST_CASE("flags reflect purity and clear the negation marker", "[engine]") {
  const Lexicon ldd(toy_lexicon_data(false));
  const auto result = score_words({"pos", "and", "pos", "not", "bag"}, ldd, kDefaults);
  const auto& s = result.trace.steps;
  CHECK(s[0].flags.pure_pos);
  CHECK(s[1].flags.and_word);
  CHECK(s[1].flags.double_word);
  CHECK_FALSE(s[2].flags.and_word);
  CHECK(s[3].flags.neg);
  CHECK_FALSE(s[3].flags.pure_pos);
  CHECK_FALSE(s[4].flags.neg);
}

TEST_CASE("rule config rejects non-finite values and unknown keys", "[engine]") {
  RuleConfig bad;
  bad.extreme_multiplier = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bad.validate(), ContractError);
  CHECK_THROWS(rule_config_from_json(nlohmann::json{{"colour", 1}}));
  const auto again = rule_config_from_json(nlohmann::json::parse(to_json(RuleConfig{}).dump()));
  CHECK(again == RuleConfig{});
}

TEST_CASE("engine matches the reference interpreter on every short sequence", "[engine][oracle]") {
  const auto sequences = all_sequences(toy_vocabulary(), 4);
  REQUIRE(sequences.size() == 4680);
  for (bool idiom : {false, true}) {
    const Lexicon ldd(toy_lexicon_data(idiom));
    const auto lex = toy_oracle_lexicon(idiom);
    std::size_t mismatches = 0;
    for (const auto& seq : sequences) {
      const auto engine = score_words(seq, ldd, kDefaults);
      const auto oracle = oracle_score(seq, lex, OracleRules{});
      bool same = engine.score == oracle.score && engine.trace.steps.size() == oracle.after.size();
      for (std::size_t i = 0; same && i < oracle.after.size(); ++i) same = engine.trace.steps[i].score_after == oracle.after[i];
      if (!same) {
        ++mismatches;
        std::string joined;
        for (const auto& w : seq) joined += w + " ";
        UNSCOPED_INFO("mismatch: " << joined << " engine=" << engine.score << " oracle=" << oracle.score);
      }
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("engine matches the reference interpreter under random rule constants", "[engine][oracle][property]") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> mult(0.5, 3.0), neg(-3.0, -0.1);
  const Lexicon ldd(toy_lexicon_data(true));
  const auto lex = toy_oracle_lexicon(true);
  for (int i = 0; i < 2000; ++i) {
    RuleConfig config{mult(rng), mult(rng), neg(rng), neg(rng)};
    OracleRules rules{config.extreme_multiplier, config.phrase_negation_amplifier, config.extreme_negation_factor,
                      config.plain_negation_multiplier};
    const auto words = random_words(rng, 10);
    CHECK_THAT(score_of(words, ldd, config), WithinAbs(oracle_score(words, lex, rules).score, 1e-12));
  }
}

TEST_CASE("scoring is deterministic", "[engine][property]") {
  std::mt19937_64 rng(29);
  const Lexicon ldd(toy_lexicon_data(true));
  for (int i = 0; i < 1000; ++i) {
    const auto words = random_words(rng, 12);
    const auto a = score_words(words, ldd, kDefaults);
    const auto b = score_words(words, ldd, kDefaults);
    CHECK(a.score == b.score);
    CHECK(render_trace(a.trace) == render_trace(b.trace));
  }
}

TEST_CASE("unknown words between clauses do not change the score", "[engine][property]") {
  std::mt19937_64 rng(31);
  const Lexicon ldd(toy_lexicon_data(false));
  for (int i = 0; i < 1000; ++i) {
    auto words = random_words(rng, 10);
    const double before = score_of(words, ldd);
    words.push_back(ToyWords::unknown);
    CHECK(score_of(words, ldd) == before);
  }
}

TEST_CASE("clause scores add across a separator", "[engine][property]") {
  // An unknown word then a plain sentiment word closes the previous group,
  // so each independent clause contributes its own score.
  std::mt19937_64 rng(37);
  const Lexicon ldd(toy_lexicon_data(false));
  for (int i = 0; i < 1000; ++i) {
    auto left = random_words(rng, 6);
    left.insert(left.begin(), ToyWords::positive);
    left.push_back(ToyWords::unknown);
    auto right = random_words(rng, 6);
    right.insert(right.begin(), ToyWords::negative);
    // Pending modifiers from the left clause would leak into the right one.
    bool extreme = false, phrase = false;
    for (const auto& w : left) {
      if (w == ToyWords::extreme) extreme = true;
      if (w == ToyWords::positive || w == ToyWords::negative) extreme = false;
      if (w == ToyWords::phrase) phrase = true;
      if (w == ToyWords::negation) phrase = false;
    }
    if (extreme || phrase) continue;
    auto both = left;
    both.insert(both.end(), right.begin(), right.end());
    CHECK_THAT(score_of(both, ldd), WithinAbs(score_of(left, ldd) + score_of(right, ldd), 1e-12));
  }
}

TEST_CASE("plain negation flips the sign of a single word", "[engine][property]") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> s(0.01, 1.0);
  for (int i = 0; i < 1000; ++i) {
    LexiconData d = toy_lexicon_data(false);
    d.positive[ToyWords::positive] = s(rng);
    d.negative[ToyWords::negative] = -s(rng);
    const Lexicon ldd(d);
    for (const char* w : {ToyWords::positive, ToyWords::negative}) {
      CHECK(score_of({w, ToyWords::negation}, ldd) == -score_of({w}, ldd));
    }
  }
}

TEST_CASE("conjoined words add and negate together", "[engine][property]") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> s(0.01, 1.0);
  for (int i = 0; i < 1000; ++i) {
    LexiconData d = toy_lexicon_data(false);
    const double a = s(rng), b = -s(rng);
    d.positive[ToyWords::positive] = a;
    d.negative[ToyWords::negative] = b;
    const Lexicon ldd(d);
    CHECK(score_of({"pos", "and", "neg"}, ldd) == a + b);
    CHECK_THAT(score_of({"pos", "and", "neg", "not"}, ldd), WithinAbs(-(a + b), 1e-12));
    CHECK_THAT(score_of({"pos", "neg", "not"}, ldd), WithinAbs(a - b, 1e-12));
  }
}

TEST_CASE("an extreme modifier strictly grows magnitude", "[engine][property]") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> s(0.01, 1.0), m(1.01, 3.0);
  for (int i = 0; i < 1000; ++i) {
    LexiconData d = toy_lexicon_data(false);
    d.positive[ToyWords::positive] = s(rng);
    d.negative[ToyWords::negative] = -s(rng);
    const Lexicon ldd(d);
    RuleConfig config;
    config.extreme_multiplier = m(rng);
    for (const char* w : {ToyWords::positive, ToyWords::negative}) {
      CHECK(std::abs(score_of({"very", w}, ldd, config)) > std::abs(score_of({w}, ldd, config)));
    }
  }
}

TEST_CASE("double negation through an idiom restores the score", "[engine][property]") {
  std::mt19937_64 rng(53);
  const Lexicon with(toy_lexicon_data(true));
  for (int i = 0; i < 1000; ++i) {
    auto words = random_words(rng, 8);
    const double before = score_of(words, with);
    words.push_back(ToyWords::unknown);
    words.push_back(ToyWords::negation);
    CHECK(score_of(words, with) == before);
  }
}
