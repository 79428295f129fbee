#ifndef PAGESENSE_DISAMBIGUATOR_H_
#define PAGESENSE_DISAMBIGUATOR_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pagesense/document.h"
#include "pagesense/knowledge_base.h"

namespace pagesense {

struct WordOccurrence {
  std::string headword;  // normalized key into the KnowledgeBase
  std::size_t count = 0;
  std::size_t first_position = 0;

  bool operator==(const WordOccurrence&) const = default;
};

// Distinct knowledge-base headwords found in a page, ordered by first
// occurrence. distinct_count() is the algorithm's "count of dual meaning
// words".
struct OccurrenceStats {
  std::vector<WordOccurrence> words;

  std::size_t distinct_count() const { return words.size(); }
  bool empty() const { return words.empty(); }
  const WordOccurrence* find(std::string_view headword) const;

  bool operator==(const OccurrenceStats&) const = default;
};

struct Vote {
  std::size_t votes = 0;
  std::size_t earliest_position = 0;
  std::size_t sense_index = 0;

  bool operator==(const Vote&) const = default;
};

// The per-page "temporary table": meaning -> accumulated votes.
struct VoteTable {
  std::map<std::string, Vote> meanings;

  bool empty() const { return meanings.empty(); }
  void add(const KeywordMatch& match);

  bool operator==(const VoteTable&) const = default;
};

enum class ResolutionStatus { kResolved, kUnresolved, kNotDual };

const char* status_name(ResolutionStatus status);

struct Resolution {
  std::string page_id;
  bool is_dual_meaning_flag = false;
  std::optional<std::string> selected_word;  // entry headword as authored
  std::optional<std::string> meaning;
  ResolutionStatus status = ResolutionStatus::kNotDual;

  // Diagnostics.
  OccurrenceStats occurrences;
  VoteTable votes;
  std::vector<KeywordMatch> matches;

  bool operator==(const Resolution&) const = default;
};

OccurrenceStats count_dual_words(const Document& doc, const KnowledgeBase& kb);

// Most frequent headword; ties go to the earliest first occurrence.
// Throws std::invalid_argument on empty stats.
std::string select_target_word(const OccurrenceStats& stats);

// Votes from every sentence that mentions the entry's headword: one vote
// per evidence-name occurrence.
VoteTable build_vote_table(const Document& doc, const IndexedEntry& entry);
VoteTable build_vote_table(const Document& doc, const DualWordEntry& entry);

// Meaning with the most votes; ties go to the earliest matched keyword and
// then to sense order. Empty table -> nullopt.
std::optional<std::string> choose_meaning(const VoteTable& table);

// Runs the full page algorithm.
Resolution resolve(const Document& doc, const KnowledgeBase& kb);

// Voting stage of resolve() for an already selected headword; `stats` must
// come from count_dual_words(doc, kb) and list `target`.
Resolution resolve_target(const Document& doc, const KnowledgeBase& kb,
                          OccurrenceStats stats, std::string_view target);

}  // namespace pagesense

#endif  // PAGESENSE_DISAMBIGUATOR_H_
