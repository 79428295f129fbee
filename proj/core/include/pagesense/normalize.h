#ifndef PAGESENSE_NORMALIZE_H_
#define PAGESENSE_NORMALIZE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pagesense {

// A maximal run of letters/digits inside some text. Offsets are byte
// offsets into the (sanitized) UTF-8 input.
struct WordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string surface;
  std::string normalized;
};

// Replaces every ill-formed UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view text);

// Lowercase + NFC form of a single word.
std::string normalize_word(std::string_view word);

// Splits text into word spans. Anything that is not a letter, digit or a
// combining mark attached to a word (hyphens and apostrophes included)
// separates tokens. Input must be valid UTF-8; see sanitize_utf8.
std::vector<WordSpan> split_words(std::string_view text);

// Normalized token sequence of a phrase such as "State Bank of India".
std::vector<std::string> normalize_phrase(std::string_view phrase);

// Canonical single-string key of a phrase: normalized tokens joined by ' '.
std::string phrase_key(std::string_view phrase);

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace pagesense

#endif  // PAGESENSE_NORMALIZE_H_
