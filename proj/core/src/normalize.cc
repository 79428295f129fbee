#include "pagesense/normalize.h"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <stdexcept>

namespace pagesense {
namespace {

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || normalizer == nullptr) {
    throw std::runtime_error("ICU NFC normalizer unavailable");
  }
  return *normalizer;
}

bool is_word_char(UChar32 c) {
  return u_isalpha(c) || u_isdigit(c);
}

bool is_mark(UChar32 c) {
  return (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0;
}

}  // namespace

std::string sanitize_utf8(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      out += "\xEF\xBF\xBD";
    } else {
      out.append(text.substr(start, i - start));
    }
  }
  return out;
}

std::string normalize_word(std::string_view word) {
  const icu::Normalizer2& normalizer = nfc();
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(word.data(), static_cast<int32_t>(word.size())));
  icu::UnicodeString composed = normalizer.normalize(text, status);
  composed.toLower(icu::Locale::getRoot());
  icu::UnicodeString folded = normalizer.normalize(composed, status);
  if (U_FAILURE(status)) {
    throw std::runtime_error(std::string("ICU normalization failed: ") +
                             u_errorName(status));
  }
  std::string out;
  folded.toUTF8String(out);
  return out;
}

std::vector<WordSpan> split_words(std::string_view text) {
  std::vector<WordSpan> words;
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  int32_t word_start = -1;

  auto close_word = [&](int32_t end) {
    if (word_start < 0) return;
    WordSpan span;
    span.begin = static_cast<std::size_t>(word_start);
    span.end = static_cast<std::size_t>(end);
    span.surface = std::string(text.substr(span.begin, span.end - span.begin));
    span.normalized = normalize_word(span.surface);
    if (!span.normalized.empty()) words.push_back(std::move(span));
    word_start = -1;
  };

  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c >= 0 && is_word_char(c)) {
      if (word_start < 0) word_start = start;
    } else if (c >= 0 && is_mark(c) && word_start >= 0) {
      // combining mark continues the current word
    } else {
      close_word(start);
    }
  }
  close_word(length);
  return words;
}

std::vector<std::string> normalize_phrase(std::string_view phrase) {
  std::vector<std::string> tokens;
  for (WordSpan& span : split_words(sanitize_utf8(phrase))) {
    tokens.push_back(std::move(span.normalized));
  }
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

std::string phrase_key(std::string_view phrase) {
  return join_tokens(normalize_phrase(phrase));
}

}  // namespace pagesense
