#include "pagesense/disambiguator.h"

#include <stdexcept>
#include <utility>

namespace pagesense {

const WordOccurrence* OccurrenceStats::find(std::string_view headword) const {
  for (const WordOccurrence& word : words) {
    if (word.headword == headword) return &word;
  }
  return nullptr;
}

void VoteTable::add(const KeywordMatch& match) {
  auto [it, inserted] = meanings.try_emplace(
      match.meaning, Vote{0, match.position, match.sense_index});
  Vote& vote = it->second;
  ++vote.votes;
  if (match.position < vote.earliest_position) {
    vote.earliest_position = match.position;
  }
}

const char* status_name(ResolutionStatus status) {
  switch (status) {
    case ResolutionStatus::kResolved:
      return "resolved";
    case ResolutionStatus::kUnresolved:
      return "unresolved";
    case ResolutionStatus::kNotDual:
      return "not_dual";
  }
  return "unknown";
}

OccurrenceStats count_dual_words(const Document& doc,
                                 const KnowledgeBase& kb) {
  OccurrenceStats stats;
  if (kb.empty()) return stats;
  const auto& keys = kb.headword_keys();
  // Headwords never span sentences.
  for (const Sentence& sentence : doc.sentences) {
    for (const PhraseHit& hit :
         kb.headword_matcher().find_all(doc.sentence_tokens(sentence))) {
      const std::string& key = keys[hit.value];
      WordOccurrence* word = nullptr;
      for (WordOccurrence& existing : stats.words) {
        if (existing.headword == key) {
          word = &existing;
          break;
        }
      }
      if (word == nullptr) {
        stats.words.push_back(WordOccurrence{key, 0, hit.position});
        word = &stats.words.back();
      }
      ++word->count;
    }
  }
  return stats;
}

std::string select_target_word(const OccurrenceStats& stats) {
  if (stats.empty()) {
    throw std::invalid_argument("select_target_word: no dual-meaning words");
  }
  const WordOccurrence* best = &stats.words.front();
  for (const WordOccurrence& word : stats.words) {
    if (word.count > best->count ||
        (word.count == best->count &&
         word.first_position < best->first_position)) {
      best = &word;
    }
  }
  return best->headword;
}

VoteTable build_vote_table(const Document& doc, const IndexedEntry& entry) {
  VoteTable table;
  for (const KeywordMatch& match : entry.match_names(doc)) table.add(match);
  return table;
}

VoteTable build_vote_table(const Document& doc, const DualWordEntry& entry) {
  return build_vote_table(doc, IndexedEntry(entry));
}

std::optional<std::string> choose_meaning(const VoteTable& table) {
  const std::pair<const std::string, Vote>* best = nullptr;
  for (const auto& candidate : table.meanings) {
    if (best == nullptr) {
      best = &candidate;
      continue;
    }
    const Vote& a = candidate.second;
    const Vote& b = best->second;
    if (a.votes != b.votes) {
      if (a.votes > b.votes) best = &candidate;
    } else if (a.earliest_position != b.earliest_position) {
      if (a.earliest_position < b.earliest_position) best = &candidate;
    } else if (a.sense_index < b.sense_index) {
      best = &candidate;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->first;
}

Resolution resolve_target(const Document& doc, const KnowledgeBase& kb,
                          OccurrenceStats stats, std::string_view target) {
  const IndexedEntry* entry = kb.find(target);
  if (entry == nullptr || stats.find(target) == nullptr) {
    throw std::invalid_argument("resolve_target: '" + std::string(target) +
                                "' is not a dual-meaning word of the page");
  }
  Resolution resolution;
  resolution.page_id = doc.page_id;
  resolution.is_dual_meaning_flag = true;
  resolution.selected_word = entry->entry().headword;
  resolution.occurrences = std::move(stats);
  resolution.matches = entry->match_names(doc);
  for (const KeywordMatch& match : resolution.matches) {
    resolution.votes.add(match);
  }
  resolution.meaning = choose_meaning(resolution.votes);
  resolution.status = resolution.meaning ? ResolutionStatus::kResolved
                                         : ResolutionStatus::kUnresolved;
  return resolution;
}

Resolution resolve(const Document& doc, const KnowledgeBase& kb) {
  OccurrenceStats stats = count_dual_words(doc, kb);
  if (stats.distinct_count() == 0) {
    Resolution resolution;
    resolution.page_id = doc.page_id;
    resolution.is_dual_meaning_flag = false;
    resolution.status = ResolutionStatus::kNotDual;
    return resolution;
  }
  std::string target = stats.distinct_count() == 1
                           ? stats.words.front().headword
                           : select_target_word(stats);
  return resolve_target(doc, kb, std::move(stats), target);
}

}  // namespace pagesense
