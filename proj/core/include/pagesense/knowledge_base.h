#ifndef PAGESENSE_KNOWLEDGE_BASE_H_
#define PAGESENSE_KNOWLEDGE_BASE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pagesense/document.h"
#include "pagesense/error.h"
#include "pagesense/phrase_matcher.h"

namespace pagesense {

// One <keyword> element: evidence names sharing a meaning label.
struct SenseGroup {
  std::vector<std::string> names;
  std::string meaning;

  bool operator==(const SenseGroup&) const = default;
};

// One <dualMeaningWord> document.
struct DualWordEntry {
  std::string dmw_id;
  std::string headword;
  std::vector<SenseGroup> senses;

  bool operator==(const DualWordEntry&) const = default;
};

// Parses and validates one knowledge-base XML document.
// Throws ParseError for malformed XML and ValidationError for schema
// violations. Unknown attributes (xmlns, xsi:*) are ignored.
DualWordEntry parse_entry(std::string_view xml_text);

// Checks the structural invariants of an entry built in code. Throws
// ValidationError on the first violation.
void validate_entry(const DualWordEntry& entry);

// Writes the canonical XML form; parse_entry(serialize_entry(e)) == e.
std::string serialize_entry(const DualWordEntry& entry);

// Non-fatal remarks, e.g. a sense count other than two or a name that
// equals the headword and therefore can never vote.
std::vector<std::string> lint_entry(const DualWordEntry& entry);

// An evidence name occurrence inside a document.
struct KeywordMatch {
  std::string name;     // as written in the entry
  std::string meaning;  // sense label
  std::size_t position = 0;
  std::size_t length = 0;  // in tokens
  std::size_t sentence_index = 0;
  std::size_t sense_index = 0;  // index into DualWordEntry::senses

  bool operator==(const KeywordMatch&) const = default;
};

// A validated entry together with its compiled matchers.
class IndexedEntry {
 public:
  explicit IndexedEntry(DualWordEntry entry,
                        std::filesystem::path source = {});

  const DualWordEntry& entry() const { return entry_; }
  const std::string& key() const { return key_; }
  const std::vector<std::string>& headword_tokens() const {
    return headword_tokens_;
  }
  const std::filesystem::path& source() const { return source_; }

  // True iff the headword occurs as a contiguous token run in `tokens`.
  bool mentions_headword(std::span<const Token> tokens) const;

  // Evidence names found in the sentences that mention the headword.
  std::vector<KeywordMatch> match_names(const Document& doc) const;

 private:
  struct NameRef {
    std::size_t sense_index;
    std::size_t name_index;
  };

  DualWordEntry entry_;
  std::string key_;
  std::vector<std::string> headword_tokens_;
  PhraseMatcher headword_matcher_;
  PhraseMatcher name_matcher_;
  std::vector<NameRef> names_;
  std::filesystem::path source_;
};

// Convenience form that compiles the entry on every call.
std::vector<KeywordMatch> match_names(const DualWordEntry& entry,
                                      const Document& doc);

// Immutable set of entries keyed by normalized headword. Copies share the
// underlying entries.
class KnowledgeBase {
 public:
  using EntryMap = std::map<std::string, std::shared_ptr<const IndexedEntry>,
                            std::less<>>;

  KnowledgeBase() = default;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const IndexedEntry* find(std::string_view normalized_headword) const;
  const EntryMap& entries() const { return entries_; }

  // Headword matcher over all entries; PhraseHit::value indexes
  // headword_keys().
  const PhraseMatcher& headword_matcher() const { return *headwords_; }
  const std::vector<std::string>& headword_keys() const {
    return *headword_keys_;
  }

 private:
  friend KnowledgeBase merge_entry(const KnowledgeBase&, DualWordEntry, bool,
                                   std::filesystem::path);
  void rebuild_index();

  EntryMap entries_;
  std::shared_ptr<const PhraseMatcher> headwords_ =
      std::make_shared<const PhraseMatcher>();
  std::shared_ptr<const std::vector<std::string>> headword_keys_ =
      std::make_shared<const std::vector<std::string>>();
};

// Returns a new base holding every entry of `kb` plus `entry`. Throws
// DuplicateEntryError when the headword is already present (unless
// `replace` is set) or when the dmw_id is used by another headword.
KnowledgeBase merge_entry(const KnowledgeBase& kb, DualWordEntry entry,
                          bool replace = false,
                          std::filesystem::path source = {});

// Loads every *.xml file of a directory in lexicographic file-name order.
// Any failure aborts with an error naming the file.
KnowledgeBase load_kb(const std::filesystem::path& directory);

// Outcome of checking one file during kb validation.
struct FileCheck {
  std::filesystem::path file;
  std::optional<DualWordEntry> entry;
  std::string error;  // empty when valid
  std::vector<std::string> warnings;

  bool ok() const { return error.empty(); }
};

// Like load_kb but checks every file instead of stopping at the first
// failure. Throws IoError when the directory cannot be listed.
std::vector<FileCheck> check_kb_dir(const std::filesystem::path& directory);

// The *.xml files of a knowledge-base directory, sorted by file name.
std::vector<std::filesystem::path> list_kb_files(
    const std::filesystem::path& directory);

}  // namespace pagesense

#endif  // PAGESENSE_KNOWLEDGE_BASE_H_
