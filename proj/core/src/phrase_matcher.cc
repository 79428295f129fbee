#include "pagesense/phrase_matcher.h"

#include <algorithm>

namespace pagesense {

PhraseMatcher::PhraseMatcher() : nodes_(1) {}

void PhraseMatcher::add(const std::vector<std::string>& tokens,
                        std::uint32_t value) {
  if (tokens.empty()) return;
  std::uint32_t node = 0;
  for (const std::string& token : tokens) {
    auto it = nodes_[node].children.find(token);
    if (it == nodes_[node].children.end()) {
      const auto child = static_cast<std::uint32_t>(nodes_.size());
      nodes_[node].children.emplace(token, child);
      nodes_.emplace_back();
      node = child;
    } else {
      node = it->second;
    }
  }
  if (!nodes_[node].terminal) {
    nodes_[node].terminal = true;
    nodes_[node].value = value;
    ++phrase_count_;
  }
}

std::vector<PhraseHit> PhraseMatcher::find_all(
    std::span<const Token> tokens) const {
  std::vector<PhraseHit> hits;
  if (phrase_count_ == 0) return hits;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    std::uint32_t node = 0;
    for (std::size_t i = start; i < tokens.size(); ++i) {
      const auto& children = nodes_[node].children;
      auto it = children.find(tokens[i].normalized);
      if (it == children.end()) break;
      node = it->second;
      if (nodes_[node].terminal) {
        hits.push_back(PhraseHit{tokens[start].position, i - start + 1,
                                 nodes_[node].value});
      }
    }
  }
  return hits;
}

bool PhraseMatcher::contains_any(std::span<const Token> tokens) const {
  if (phrase_count_ == 0) return false;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    std::uint32_t node = 0;
    for (std::size_t i = start; i < tokens.size(); ++i) {
      auto it = nodes_[node].children.find(tokens[i].normalized);
      if (it == nodes_[node].children.end()) break;
      node = it->second;
      if (nodes_[node].terminal) return true;
    }
  }
  return false;
}

std::vector<PhraseHit> select_longest_leftmost(std::vector<PhraseHit> hits) {
  std::sort(hits.begin(), hits.end(),
            [](const PhraseHit& a, const PhraseHit& b) {
              if (a.length != b.length) return a.length > b.length;
              return a.position < b.position;
            });
  std::vector<PhraseHit> kept;
  for (const PhraseHit& hit : hits) {
    const bool overlaps =
        std::any_of(kept.begin(), kept.end(), [&](const PhraseHit& k) {
          return hit.position < k.position + k.length &&
                 k.position < hit.position + hit.length;
        });
    if (!overlaps) kept.push_back(hit);
  }
  std::sort(kept.begin(), kept.end(),
            [](const PhraseHit& a, const PhraseHit& b) {
              return a.position < b.position;
            });
  return kept;
}

}  // namespace pagesense
