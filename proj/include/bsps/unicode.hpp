#pragma once

// UTF-8 helpers backed by ICU: NFC normalization and the character classes
// the tokenizer uses.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include "bsps/error.hpp"

namespace bsps::unicode {

inline constexpr char32_t kZeroWidthNonJoiner = 0x200C;
inline constexpr char32_t kZeroWidthJoiner = 0x200D;

namespace detail {

inline const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || norm == nullptr) {
    throw Error(std::string("ICU NFC normalizer unavailable: ") + u_errorName(status));
  }
  return *norm;
}

} // namespace detail

/// Decoded code point and the byte range it occupied.
struct CodePoint {
  char32_t value;  ///< U+FFFD for ill-formed input
  std::size_t begin;
  std::size_t end;
};

/// Decodes the code point starting at byte offset `pos`. Ill-formed bytes
/// decode to U+FFFD and advance by at least one byte.
inline CodePoint decode_at(std::string_view text, std::size_t pos) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  auto offset = static_cast<std::int32_t>(pos);
  UChar32 c = 0;
  U8_NEXT(bytes, offset, length, c);
  if (c < 0) c = 0xFFFD;
  return {static_cast<char32_t>(c), pos, static_cast<std::size_t>(offset)};
}

inline std::string encode(char32_t cp) {
  std::string out(4, '\0');
  std::int32_t offset = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<std::uint8_t*>(out.data()), offset, 4, static_cast<UChar32>(cp), error);
  if (error) return "\xEF\xBF\xBD";
  out.resize(static_cast<std::size_t>(offset));
  return out;
}

inline std::string nfc(std::string_view text) {
  const auto& norm = detail::nfc_instance();
  auto source = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  if (norm.isNormalized(source, status) && U_SUCCESS(status)) {
    // fromUTF8 repairs ill-formed input, so round-trip through it anyway.
    std::string out;
    source.toUTF8String(out);
    return out;
  }
  status = U_ZERO_ERROR;
  icu::UnicodeString result = norm.normalize(source, status);
  if (U_FAILURE(status)) {
    throw Error(std::string("NFC normalization failed: ") + u_errorName(status));
  }
  std::string out;
  result.toUTF8String(out);
  return out;
}

inline bool is_nfc(std::string_view text) {
  auto source = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  const bool ok = detail::nfc_instance().isNormalized(source, status);
  return U_SUCCESS(status) && ok;
}

/// Word characters: letters, marks, and digits of the Bengali block, Latin
/// letters, and ASCII digits. Everything else separates tokens.
inline bool is_word_char(char32_t cp) {
  const auto c = static_cast<UChar32>(cp);
  if (cp < 0x80) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
  }
  if (ublock_getCode(c) == UBLOCK_BENGALI) {
    const auto mask = U_GET_GC_MASK(c);
    return (mask & (U_GC_L_MASK | U_GC_M_MASK | U_GC_ND_MASK)) != 0;
  }
  UErrorCode status = U_ZERO_ERROR;
  return u_isalpha(c) && uscript_getScript(c, &status) == USCRIPT_LATIN && U_SUCCESS(status);
}

/// ZWJ/ZWNJ shape Bengali conjuncts; they are kept only between word characters.
inline bool is_joiner(char32_t cp) {
  return cp == kZeroWidthJoiner || cp == kZeroWidthNonJoiner;
}

inline bool is_space(char32_t cp) {
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

inline bool contains_space(std::string_view text) {
  for (std::size_t pos = 0; pos < text.size();) {
    const auto cp = decode_at(text, pos);
    if (is_space(cp.value)) return true;
    pos = cp.end;
  }
  return false;
}

/// True when every code point would survive tokenization inside one token.
inline bool is_single_word(std::string_view text) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    const auto cp = decode_at(text, pos);
    const bool last = cp.end >= text.size();
    if (is_joiner(cp.value)) {
      if (first || last) return false;
    } else if (!is_word_char(cp.value)) {
      return false;
    }
    first = false;
    pos = cp.end;
  }
  return true;
}

inline std::string trim(std::string_view text) {
  std::size_t begin = 0;
  while (begin < text.size()) {
    const auto cp = decode_at(text, begin);
    if (!is_space(cp.value)) break;
    begin = cp.end;
  }
  std::size_t end = begin;
  for (std::size_t pos = begin; pos < text.size();) {
    const auto cp = decode_at(text, pos);
    if (!is_space(cp.value)) end = cp.end;
    pos = cp.end;
  }
  return std::string(text.substr(begin, end - begin));
}

/// Approximate terminal columns: code points minus combining marks and joiners.
inline std::size_t display_width(std::string_view text) {
  std::size_t width = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto cp = decode_at(text, pos);
    const auto mask = U_GET_GC_MASK(static_cast<UChar32>(cp.value));
    if ((mask & (U_GC_MN_MASK | U_GC_ME_MASK | U_GC_CF_MASK)) == 0) ++width;
    pos = cp.end;
  }
  return width;
}

} // namespace bsps::unicode
