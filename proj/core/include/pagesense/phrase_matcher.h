#ifndef PAGESENSE_PHRASE_MATCHER_H_
#define PAGESENSE_PHRASE_MATCHER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pagesense/document.h"

namespace pagesense {

// One occurrence of a registered phrase in a token stream.
struct PhraseHit {
  std::size_t position = 0;  // document-wide token ordinal of the first token
  std::size_t length = 0;    // in tokens
  std::uint32_t value = 0;   // payload given to PhraseMatcher::add

  bool operator==(const PhraseHit&) const = default;
};

// Token-level trie over normalized phrases. Immutable once built; lookups
// are const and safe to run concurrently.
class PhraseMatcher {
 public:
  PhraseMatcher();

  // Registers a normalized token sequence. Re-adding an existing phrase
  // keeps the first value. Empty sequences are ignored.
  void add(const std::vector<std::string>& tokens, std::uint32_t value);

  bool empty() const { return phrase_count_ == 0; }
  std::size_t phrase_count() const { return phrase_count_; }

  // Every occurrence of every phrase inside `tokens`, including nested and
  // overlapping ones, ordered by (position, length).
  std::vector<PhraseHit> find_all(std::span<const Token> tokens) const;

  // True iff some phrase occurs in `tokens`.
  bool contains_any(std::span<const Token> tokens) const;

 private:
  struct Node {
    std::map<std::string, std::uint32_t, std::less<>> children;
    bool terminal = false;
    std::uint32_t value = 0;
  };

  std::vector<Node> nodes_;
  std::size_t phrase_count_ = 0;
};

// Resolves overlaps: longest hit first, then leftmost; a hit is kept only if
// it does not overlap an already kept one. Result is ordered by position.
std::vector<PhraseHit> select_longest_leftmost(std::vector<PhraseHit> hits);

}  // namespace pagesense

#endif  // PAGESENSE_PHRASE_MATCHER_H_
