#pragma once

// Review text -> filtered token sequence: tokenize, normalize, drop stop words.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bsps/lexicon.hpp"
#include "bsps/unicode.hpp"

namespace bsps {

struct Token {
  std::string text;
  std::size_t begin = 0;  ///< byte offset into the original review
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenStream {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  std::vector<std::string> words() const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.text);
    return out;
  }

  friend bool operator==(const TokenStream&, const TokenStream&) = default;
};

/// Splits on runs of non-word characters. Each token is a maximal run of
/// Bengali letters/marks/digits, Latin letters, and ASCII digits; ZWJ and
/// ZWNJ stay inside a token when both neighbours are word characters.
inline TokenStream tokenize(std::string_view text) {
  TokenStream stream;
  std::size_t pos = 0;
  bool in_token = false;
  std::size_t start = 0;
  std::size_t last_word_end = 0;

  auto flush = [&] {
    if (in_token) {
      stream.tokens.push_back({std::string(text.substr(start, last_word_end - start)), start, last_word_end});
      in_token = false;
    }
  };

  while (pos < text.size()) {
    const auto cp = unicode::decode_at(text, pos);
    if (unicode::is_word_char(cp.value)) {
      if (!in_token) {
        in_token = true;
        start = cp.begin;
      }
      last_word_end = cp.end;
    } else if (in_token && unicode::is_joiner(cp.value) && cp.end < text.size() &&
               unicode::is_word_char(unicode::decode_at(text, cp.end).value)) {
      // interior joiner; the next word character extends the token
    } else {
      flush();
    }
    pos = cp.end;
  }
  flush();
  return stream;
}

namespace detail {

/// Keeps word characters and interior joiners; drops everything else.
inline std::string strip_non_word(std::string_view word) {
  std::vector<unicode::CodePoint> kept;
  for (std::size_t pos = 0; pos < word.size();) {
    const auto cp = unicode::decode_at(word, pos);
    if (unicode::is_word_char(cp.value) || unicode::is_joiner(cp.value)) kept.push_back(cp);
    pos = cp.end;
  }
  std::string out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (unicode::is_joiner(kept[i].value)) {
      const bool inner = i > 0 && i + 1 < kept.size() && !unicode::is_joiner(kept[i - 1].value) &&
                         !unicode::is_joiner(kept[i + 1].value);
      if (!inner) continue;
    }
    out += word.substr(kept[i].begin, kept[i].end - kept[i].begin);
  }
  return out;
}

} // namespace detail

/// NFC-normalizes each token and strips leftover punctuation; tokens left
/// empty are dropped. Idempotent.
inline TokenStream normalize_tokens(const TokenStream& stream) {
  TokenStream out;
  out.tokens.reserve(stream.tokens.size());
  for (const auto& token : stream.tokens) {
    auto text = detail::strip_non_word(unicode::nfc(token.text));
    if (text.empty()) continue;
    out.tokens.push_back({std::move(text), token.begin, token.end});
  }
  return out;
}

/// Drops tokens whose role is StopWord. Words in any other list are kept
/// even when they also appear in the stop list.
inline TokenStream remove_stop_words(const TokenStream& stream, const Lexicon& ldd) {
  TokenStream out;
  out.tokens.reserve(stream.tokens.size());
  for (const auto& token : stream.tokens) {
    if (ldd.lookup(token.text).kind != RoleKind::StopWord) out.tokens.push_back(token);
  }
  return out;
}

/// tokenize -> normalize_tokens -> remove_stop_words.
inline TokenStream preprocess(std::string_view text, const Lexicon& ldd) {
  return remove_stop_words(normalize_tokens(tokenize(text)), ldd);
}

} // namespace bsps
