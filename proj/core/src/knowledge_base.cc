#include "pagesense/knowledge_base.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include <boost/property_tree/detail/rapidxml.hpp>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "pagesense/normalize.h"

namespace pagesense {

namespace pt = boost::property_tree;

const char* constraint_name(Constraint constraint) {
  switch (constraint) {
    case Constraint::kRootElement:
      return "root element must be dualMeaningWord";
    case Constraint::kDmwIdRequired:
      return "dmw_id required";
    case Constraint::kHeadwordRequired:
      return "dualMeaningWordName required";
    case Constraint::kKeywordsRequired:
      return "keywords required";
    case Constraint::kTooFewSenses:
      return "at least 2 keyword groups required";
    case Constraint::kNamesRequired:
      return "names required";
    case Constraint::kEmptyName:
      return "name must not be empty";
    case Constraint::kMeaningRequired:
      return "meaning required";
    case Constraint::kDuplicateMeaning:
      return "duplicate meaning";
    case Constraint::kDuplicateNameAcrossSenses:
      return "duplicate name across senses";
    case Constraint::kElementOrder:
      return "unexpected element";
  }
  return "invalid entry";
}

namespace {

constexpr std::string_view kAttributes = "<xmlattr>";
constexpr std::string_view kComment = "<xmlcomment>";

bool is_xml_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

// Trims and collapses whitespace runs to a single space.
std::string clean_text(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (is_xml_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

// Child elements in document order, skipping attributes and comments.
std::vector<const pt::ptree::value_type*> elements(const pt::ptree& node) {
  std::vector<const pt::ptree::value_type*> out;
  for (const auto& child : node) {
    if (child.first == kAttributes || child.first == kComment) continue;
    out.push_back(&child);
  }
  return out;
}

std::string element_text(const pt::ptree& node) {
  return clean_text(node.data());
}

SenseGroup parse_sense(const pt::ptree& keyword, std::size_t ordinal) {
  const std::string where = "keyword #" + std::to_string(ordinal + 1);
  const auto children = elements(keyword);
  SenseGroup sense;
  std::size_t i = 0;
  if (i >= children.size() || children[i]->first != "names") {
    throw ValidationError(Constraint::kNamesRequired, where);
  }
  for (const auto* name : elements(children[i]->second)) {
    if (name->first != "name") {
      throw ValidationError(Constraint::kElementOrder,
                            "<" + name->first + "> in names of " + where);
    }
    sense.names.push_back(element_text(name->second));
  }
  ++i;
  if (i >= children.size() || children[i]->first != "meaning") {
    throw ValidationError(Constraint::kMeaningRequired, where);
  }
  sense.meaning = element_text(children[i]->second);
  ++i;
  if (i < children.size()) {
    throw ValidationError(Constraint::kElementOrder,
                          "<" + children[i]->first + "> in " + where);
  }
  return sense;
}

}  // namespace

void validate_entry(const DualWordEntry& entry) {
  if (entry.dmw_id.empty()) {
    throw ValidationError(Constraint::kDmwIdRequired, "");
  }
  if (phrase_key(entry.headword).empty()) {
    throw ValidationError(Constraint::kHeadwordRequired, "");
  }
  if (entry.senses.size() < 2) {
    throw ValidationError(Constraint::kTooFewSenses,
                          "found " + std::to_string(entry.senses.size()));
  }
  std::set<std::string> meanings;
  std::map<std::string, std::size_t> name_owner;
  for (std::size_t s = 0; s < entry.senses.size(); ++s) {
    const SenseGroup& sense = entry.senses[s];
    const std::string where = "keyword #" + std::to_string(s + 1);
    if (sense.names.empty()) {
      throw ValidationError(Constraint::kNamesRequired, where);
    }
    if (sense.meaning.empty()) {
      throw ValidationError(Constraint::kMeaningRequired, where);
    }
    if (!meanings.insert(sense.meaning).second) {
      throw ValidationError(Constraint::kDuplicateMeaning,
                            "'" + sense.meaning + "'");
    }
    for (const std::string& name : sense.names) {
      const std::string key = phrase_key(name);
      if (key.empty()) {
        throw ValidationError(Constraint::kEmptyName,
                              "'" + name + "' in " + where);
      }
      auto [it, inserted] = name_owner.emplace(key, s);
      if (!inserted && it->second != s) {
        throw ValidationError(Constraint::kDuplicateNameAcrossSenses,
                              "'" + name + "' in '" +
                                  entry.senses[it->second].meaning +
                                  "' and '" + sense.meaning + "'");
      }
    }
  }
}

namespace {

// Reports a mismatched closing tag at its own line.
void check_closing_tags(std::string_view xml_text) {
  namespace rx = pt::detail::rapidxml;
  std::vector<char> buffer(xml_text.begin(), xml_text.end());
  buffer.push_back('\0');
  rx::xml_document<char> document;
  try {
    document.parse<rx::parse_validate_closing_tags | rx::parse_non_destructive>(
        buffer.data());
  } catch (const rx::parse_error& e) {
    const char* where = e.where<char>();
    const auto line = 1 + std::count(static_cast<const char*>(buffer.data()), where, '\n');
    throw ParseError(e.what(), static_cast<std::size_t>(line));
  }
}

}  // namespace

DualWordEntry parse_entry(std::string_view xml_text) {
  check_closing_tags(xml_text);
  pt::ptree tree;
  std::istringstream in{std::string(xml_text)};
  try {
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(e.message(), e.line());
  }

  const auto roots = elements(tree);
  if (roots.size() != 1 || roots.front()->first != "dualMeaningWord") {
    throw ValidationError(
        Constraint::kRootElement,
        roots.empty() ? "no element" : "found <" + roots.front()->first + ">");
  }
  const pt::ptree& root = roots.front()->second;

  DualWordEntry entry;
  if (auto id = root.get_child_optional("<xmlattr>.dmw_id")) {
    entry.dmw_id = clean_text(id->data());
  }
  if (entry.dmw_id.empty()) {
    throw ValidationError(Constraint::kDmwIdRequired, "");
  }

  const auto children = elements(root);
  std::size_t i = 0;
  if (i >= children.size() || children[i]->first != "dualMeaningWordName") {
    throw ValidationError(Constraint::kHeadwordRequired, "");
  }
  entry.headword = element_text(children[i]->second);
  ++i;
  if (i >= children.size() || children[i]->first != "keywords") {
    throw ValidationError(Constraint::kKeywordsRequired, "");
  }
  const auto groups = elements(children[i]->second);
  ++i;
  if (i < children.size()) {
    throw ValidationError(Constraint::kElementOrder,
                          "<" + children[i]->first + "> in dualMeaningWord");
  }

  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g]->first != "keyword") {
      throw ValidationError(Constraint::kElementOrder,
                            "<" + groups[g]->first + "> in keywords");
    }
    entry.senses.push_back(parse_sense(groups[g]->second, g));
  }

  validate_entry(entry);
  return entry;
}

namespace {

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string serialize_entry(const DualWordEntry& entry) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<dualMeaningWord dmw_id=\"" + escape_xml(entry.dmw_id) + "\">\n";
  out += "  <dualMeaningWordName>" + escape_xml(entry.headword) +
         "</dualMeaningWordName>\n";
  out += "  <keywords>\n";
  for (const SenseGroup& sense : entry.senses) {
    out += "    <keyword>\n      <names>\n";
    for (const std::string& name : sense.names) {
      out += "        <name>" + escape_xml(name) + "</name>\n";
    }
    out += "      </names>\n";
    out += "      <meaning>" + escape_xml(sense.meaning) + "</meaning>\n";
    out += "    </keyword>\n";
  }
  out += "  </keywords>\n</dualMeaningWord>\n";
  return out;
}

std::vector<std::string> lint_entry(const DualWordEntry& entry) {
  std::vector<std::string> warnings;
  if (entry.senses.size() != 2) {
    warnings.push_back("'" + entry.headword + "' has " +
                       std::to_string(entry.senses.size()) +
                       " senses (expected 2)");
  }
  const std::string headword = phrase_key(entry.headword);
  for (const SenseGroup& sense : entry.senses) {
    std::set<std::string> seen;
    for (const std::string& name : sense.names) {
      const std::string key = phrase_key(name);
      if (key == headword) {
        warnings.push_back("name '" + name +
                           "' equals the headword and never votes");
      } else if (!seen.insert(key).second) {
        warnings.push_back("name '" + name + "' repeated in '" +
                           sense.meaning + "'");
      }
    }
  }
  return warnings;
}

IndexedEntry::IndexedEntry(DualWordEntry entry, std::filesystem::path source)
    : entry_(std::move(entry)), source_(std::move(source)) {
  validate_entry(entry_);
  headword_tokens_ = normalize_phrase(entry_.headword);
  key_ = join_tokens(headword_tokens_);
  headword_matcher_.add(headword_tokens_, 0);
  for (std::size_t s = 0; s < entry_.senses.size(); ++s) {
    const auto& names = entry_.senses[s].names;
    for (std::size_t n = 0; n < names.size(); ++n) {
      std::vector<std::string> tokens = normalize_phrase(names[n]);
      if (tokens == headword_tokens_) continue;
      name_matcher_.add(tokens, static_cast<std::uint32_t>(names_.size()));
      names_.push_back(NameRef{s, n});
    }
  }
}

bool IndexedEntry::mentions_headword(std::span<const Token> tokens) const {
  return headword_matcher_.contains_any(tokens);
}

std::vector<KeywordMatch> IndexedEntry::match_names(const Document& doc) const {
  std::vector<KeywordMatch> matches;
  for (const Sentence& sentence : doc.sentences) {
    const auto tokens = doc.sentence_tokens(sentence);
    if (!mentions_headword(tokens)) continue;
    for (const PhraseHit& hit :
         select_longest_leftmost(name_matcher_.find_all(tokens))) {
      const NameRef& ref = names_[hit.value];
      const SenseGroup& sense = entry_.senses[ref.sense_index];
      matches.push_back(KeywordMatch{sense.names[ref.name_index],
                                     sense.meaning, hit.position, hit.length,
                                     sentence.index, ref.sense_index});
    }
  }
  return matches;
}

std::vector<KeywordMatch> match_names(const DualWordEntry& entry,
                                      const Document& doc) {
  return IndexedEntry(entry).match_names(doc);
}

const IndexedEntry* KnowledgeBase::find(
    std::string_view normalized_headword) const {
  auto it = entries_.find(normalized_headword);
  return it == entries_.end() ? nullptr : it->second.get();
}

void KnowledgeBase::rebuild_index() {
  auto matcher = std::make_shared<PhraseMatcher>();
  auto keys = std::make_shared<std::vector<std::string>>();
  for (const auto& [key, entry] : entries_) {
    matcher->add(entry->headword_tokens(),
                 static_cast<std::uint32_t>(keys->size()));
    keys->push_back(key);
  }
  headwords_ = std::move(matcher);
  headword_keys_ = std::move(keys);
}

KnowledgeBase merge_entry(const KnowledgeBase& kb, DualWordEntry entry,
                          bool replace, std::filesystem::path source) {
  auto indexed =
      std::make_shared<const IndexedEntry>(std::move(entry), std::move(source));
  const std::string& key = indexed->key();
  const bool present = kb.entries_.contains(key);
  if (present && !replace) {
    throw DuplicateEntryError("duplicate entry for headword '" + key + "'");
  }
  for (const auto& [other_key, other] : kb.entries_) {
    if (other_key != key &&
        other->entry().dmw_id == indexed->entry().dmw_id) {
      throw DuplicateEntryError("dmw_id '" + indexed->entry().dmw_id +
                                "' already used by '" + other_key + "'");
    }
  }
  KnowledgeBase merged = kb;
  merged.entries_.insert_or_assign(key, std::move(indexed));
  merged.rebuild_index();
  return merged;
}

std::vector<std::filesystem::path> list_kb_files(
    const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::directory_iterator it(directory, ec);
  if (ec) {
    throw IoError("cannot read knowledge base directory '" +
                  directory.string() + "': " + ec.message());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& item : it) {
    if (item.path().extension() == ".xml" && !item.is_directory()) {
      files.push_back(item.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) {
              return a.filename().string() < b.filename().string();
            });
  return files;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return buffer.str();
}

DualWordEntry parse_file(const std::filesystem::path& path) {
  const std::string name = path.filename().string();
  const std::string text = read_file(path);
  try {
    return parse_entry(text);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), name);
  } catch (const ValidationError& e) {
    throw ValidationError(e.constraint(), e.detail(), name);
  }
}

}  // namespace

KnowledgeBase load_kb(const std::filesystem::path& directory) {
  KnowledgeBase kb;
  for (const auto& path : list_kb_files(directory)) {
    DualWordEntry entry = parse_file(path);
    try {
      kb = merge_entry(kb, std::move(entry), false, path);
    } catch (const DuplicateEntryError& e) {
      throw DuplicateEntryError(path.filename().string() + ": " + e.what());
    }
  }
  return kb;
}

std::vector<FileCheck> check_kb_dir(const std::filesystem::path& directory) {
  std::vector<FileCheck> checks;
  KnowledgeBase kb;
  for (const auto& path : list_kb_files(directory)) {
    FileCheck check;
    check.file = path;
    try {
      DualWordEntry entry = parse_file(path);
      check.warnings = lint_entry(entry);
      kb = merge_entry(kb, entry, false, path);
      check.entry = std::move(entry);
    } catch (const DuplicateEntryError& e) {
      check.error = path.filename().string() + ": " + e.what();
    } catch (const Error& e) {
      check.error = e.what();
    }
    checks.push_back(std::move(check));
  }
  return checks;
}

}  // namespace pagesense
