#ifndef PAGESENSE_DOCUMENT_H_
#define PAGESENSE_DOCUMENT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pagesense {

struct Token {
  std::string surface;
  std::string normalized;
  std::size_t position = 0;
  std::size_t sentence_index = 0;

  bool operator==(const Token&) const = default;
};

// [token_begin, token_end) indexes Document::tokens.
struct Sentence {
  std::size_t index = 0;
  std::string raw_text;
  std::size_t token_begin = 0;
  std::size_t token_end = 0;

  std::size_t token_count() const { return token_end - token_begin; }
  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string page_id;
  std::vector<Sentence> sentences;
  std::vector<Token> tokens;

  std::span<const Token> sentence_tokens(const Sentence& sentence) const {
    return std::span<const Token>(tokens).subspan(sentence.token_begin,
                                                  sentence.token_count());
  }

  bool operator==(const Document&) const = default;
};

}  // namespace pagesense

#endif  // PAGESENSE_DOCUMENT_H_
