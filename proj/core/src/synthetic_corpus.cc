#include "pagesense/synthetic_corpus.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pagesense/error.h"
#include "pagesense/normalize.h"
#include "pagesense/results_io.h"
#include "pagesense/text_extraction.h"

namespace pagesense {
namespace {

// std::uniform_int_distribution is implementation defined; this is not, so
// a seed names the same corpus on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound).
  std::size_t below(std::size_t bound) {
    const std::uint64_t n = bound;
    const std::uint64_t limit =
        std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % n);
  }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }
  template <typename T, std::size_t N>
  const T& pick(const std::array<T, N>& items) {
    return items[below(N)];
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::array<std::string_view, 12> kAdjectives = {
    "quiet", "busy", "old", "new", "small", "large",
    "bright", "narrow", "famous", "local", "green", "friendly"};
constexpr std::array<std::string_view, 14> kSubjects = {
    "teacher", "farmer", "student", "painter", "neighbour", "visitor",
    "engineer", "doctor", "child", "poet", "driver", "baker",
    "tailor", "gardener"};
constexpr std::array<std::string_view, 10> kVerbs = {
    "painted", "described", "photographed", "admired", "cleaned",
    "repaired", "visited", "sketched", "measured", "decorated"};
constexpr std::array<std::string_view, 14> kObjects = {
    "lantern", "bicycle", "kitchen", "garden", "library", "staircase",
    "window", "blanket", "teapot", "carpet", "piano", "museum",
    "bakery", "courtyard"};
constexpr std::array<std::string_view, 8> kPrepositions = {
    "near", "behind", "beside", "inside", "opposite", "around", "past",
    "beyond"};
constexpr std::array<std::string_view, 8> kTimes = {
    "in the morning", "after lunch", "last week", "on Sunday",
    "before dinner", "during the festival", "every summer", "at dawn"};

constexpr std::array<std::string_view, 6> kOpenings = {
    "Yesterday we talked about the", "The guide described the",
    "Everyone remembers the", "Our notes mention the",
    "A short story about the", "The article discussed the"};
constexpr std::array<std::string_view, 5> kLinks = {
    "together with the", "along with the", "and also the", "next to the",
    "as well as the"};
constexpr std::array<std::string_view, 4> kNoEvidenceEndings = {
    "for a long time", "once again", "in a few words", "without details"};

Document single_sentence(const std::string& text) {
  return segment_and_tokenize(text, "");
}

// Every headword and every name of the base.
PhraseMatcher all_kb_phrases(const KnowledgeBase& kb) {
  PhraseMatcher matcher;
  for (const auto& [key, indexed] : kb.entries()) {
    matcher.add(indexed->headword_tokens(), 0);
    for (const SenseGroup& sense : indexed->entry().senses) {
      for (const std::string& name : sense.names) {
        matcher.add(normalize_phrase(name), 0);
      }
    }
  }
  return matcher;
}

class PageWriter {
 public:
  PageWriter(const KnowledgeBase& kb, Rng& rng)
      : kb_(kb), rng_(rng), forbidden_(all_kb_phrases(kb)) {}

  std::string filler_sentence() {
    for (int attempt = 0; attempt < 256; ++attempt) {
      std::string text = "The " + std::string(rng_.pick(kAdjectives)) + ' ' +
                         std::string(rng_.pick(kSubjects)) + ' ' +
                         std::string(rng_.pick(kVerbs)) + " the " +
                         std::string(rng_.pick(kObjects)) + ' ' +
                         std::string(rng_.pick(kPrepositions)) + " the " +
                         std::string(rng_.pick(kObjects)) + ' ' +
                         std::string(rng_.pick(kTimes)) + '.';
      if (!forbidden_.contains_any(single_sentence(text).tokens)) return text;
    }
    throw std::runtime_error(
        "knowledge base covers the filler vocabulary; cannot build plain "
        "sentences");
  }

  // Sentence with the headword and `names` of one sense. Rejects wordings in
  // which a foreign phrase (another headword or a name of another sense)
  // appears outside the planted phrases.
  std::string evidence_sentence(const IndexedEntry& target,
                                std::size_t sense_index,
                                const std::vector<std::string>& names) {
    const PhraseMatcher foreign = foreign_phrases(target, sense_index);
    for (int attempt = 0; attempt < 256; ++attempt) {
      std::string text = std::string(rng_.pick(kOpenings)) + ' ' +
                         target.entry().headword + ' ' +
                         std::string(rng_.pick(kLinks)) + ' ' + names[0];
      for (std::size_t i = 1; i < names.size(); ++i) {
        text += i + 1 == names.size() ? " and the " : ", the ";
        text += names[i];
      }
      text += ' ' + std::string(rng_.pick(kTimes)) + '.';
      if (is_clean(text, foreign, names)) return text;
    }
    throw std::runtime_error("cannot build an unambiguous sentence for '" +
                             target.entry().headword + "'");
  }

  std::string headword_only_sentence(const IndexedEntry& target) {
    PhraseMatcher foreign = foreign_phrases(target, target.entry().senses.size());
    for (int attempt = 0; attempt < 256; ++attempt) {
      std::string text = std::string(rng_.pick(kOpenings)) + ' ' +
                         target.entry().headword + ' ' +
                         std::string(rng_.pick(kNoEvidenceEndings)) + '.';
      if (is_clean(text, foreign, {})) return text;
    }
    throw std::runtime_error("cannot build a plain sentence for '" +
                             target.entry().headword + "'");
  }

 private:
  // Other headwords plus names of every sense except `sense_index`.
  PhraseMatcher foreign_phrases(const IndexedEntry& target,
                                std::size_t sense_index) const {
    PhraseMatcher matcher;
    for (const auto& [key, indexed] : kb_.entries()) {
      if (key != target.key()) matcher.add(indexed->headword_tokens(), 0);
    }
    const auto& senses = target.entry().senses;
    for (std::size_t s = 0; s < senses.size(); ++s) {
      if (s == sense_index) continue;
      for (const std::string& name : senses[s].names) {
        const auto tokens = normalize_phrase(name);
        if (tokens != target.headword_tokens()) matcher.add(tokens, 0);
      }
    }
    return matcher;
  }

  // True when every foreign hit lies inside a planted name.
  bool is_clean(const std::string& text, const PhraseMatcher& foreign,
                const std::vector<std::string>& names) const {
    const Document doc = single_sentence(text);
    if (doc.sentences.size() != 1) return false;
    std::vector<std::pair<std::size_t, std::size_t>> planted;
    for (const std::string& name : names) {
      PhraseMatcher one;
      one.add(normalize_phrase(name), 0);
      for (const PhraseHit& hit : one.find_all(doc.tokens)) {
        planted.emplace_back(hit.position, hit.position + hit.length);
      }
    }
    for (const PhraseHit& hit : foreign.find_all(doc.tokens)) {
      const bool nested = std::any_of(
          planted.begin(), planted.end(), [&](const auto& span) {
            return span.first <= hit.position &&
                   hit.position + hit.length <= span.second &&
                   hit.length < span.second - span.first;
          });
      if (!nested) return false;
    }
    return true;
  }

  const KnowledgeBase& kb_;
  Rng& rng_;
  PhraseMatcher forbidden_;
};

// Names of a sense that can stand alone as evidence: not the headword, free
// of other headwords and not split by sentence punctuation.
std::vector<std::string> usable_names(const KnowledgeBase& kb,
                                      const IndexedEntry& target,
                                      const SenseGroup& sense) {
  PhraseMatcher others;
  for (const auto& [key, indexed] : kb.entries()) {
    if (key != target.key()) others.add(indexed->headword_tokens(), 0);
  }
  std::vector<std::string> names;
  for (const std::string& name : sense.names) {
    const auto tokens = normalize_phrase(name);
    if (tokens == target.headword_tokens()) continue;
    const Document as_text = single_sentence(name);
    if (as_text.sentences.size() != 1 || others.contains_any(as_text.tokens)) {
      continue;
    }
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      names.push_back(name);
    }
  }
  return names;
}

std::string page_html(std::size_t number, const std::vector<std::string>& sentences,
                      Rng& rng) {
  std::string html =
      "<!DOCTYPE html>\n<html>\n<head>\n<title>Community notes " +
      std::to_string(number) +
      "</title>\n<meta name=\"description\" content=\"Community notes\">\n"
      "<style>p { margin: 0; }</style>\n</head>\n<body>\n<h1>Notes " +
      std::to_string(number) + "</h1>\n";
  for (std::size_t i = 0; i < sentences.size();) {
    const std::size_t take =
        std::min<std::size_t>(1 + rng.below(2), sentences.size() - i);
    html += "<p>";
    for (std::size_t k = 0; k < take; ++k) {
      if (k) html += ' ';
      html += sentences[i + k];
    }
    html += "</p>\n";
    i += take;
  }
  html += "</body>\n</html>\n";
  return html;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

bool valid_fraction(double value) {
  return std::isfinite(value) && value >= 0.0 && value <= 1.0;
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(const KnowledgeBase& kb,
                                          const SyntheticOptions& options,
                                          const std::filesystem::path& out_dir) {
  if (!valid_fraction(options.dual_fraction)) {
    throw std::invalid_argument("dual_fraction must lie in [0, 1]");
  }
  if (!valid_fraction(options.no_evidence_fraction)) {
    throw std::invalid_argument("no_evidence_fraction must lie in [0, 1]");
  }
  const auto n_dual = static_cast<std::size_t>(
      std::llround(static_cast<double>(options.n_pages) * options.dual_fraction));
  if (n_dual > 0 && kb.empty()) {
    throw std::invalid_argument(
        "a non-empty knowledge base is required when dual_fraction > 0");
  }
  const auto n_no_evidence = static_cast<std::size_t>(std::llround(
      static_cast<double>(n_dual) * options.no_evidence_fraction));

  namespace fs = std::filesystem;
  SyntheticCorpus corpus;
  corpus.pages_dir = out_dir / "pages";
  corpus.gold_path = out_dir / "gold.tsv";
  std::error_code ec;
  fs::create_directories(corpus.pages_dir, ec);
  if (ec) {
    throw IoError("cannot create '" + corpus.pages_dir.string() +
                  "': " + ec.message());
  }
  if (!fs::is_empty(corpus.pages_dir, ec) || ec) {
    throw IoError("'" + corpus.pages_dir.string() +
                  "' already holds files; use a fresh output directory");
  }

  Rng rng(options.seed);
  std::vector<std::size_t> order(options.n_pages);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<char> is_dual(options.n_pages, 0);
  std::vector<char> no_evidence(options.n_pages, 0);
  for (std::size_t i = 0; i < n_dual; ++i) is_dual[order[i]] = 1;
  {
    std::vector<std::size_t> dual(order.begin(), order.begin() + n_dual);
    std::sort(dual.begin(), dual.end());
    rng.shuffle(dual);
    for (std::size_t i = 0; i < n_no_evidence; ++i) no_evidence[dual[i]] = 1;
  }

  std::vector<const IndexedEntry*> entries;
  for (const auto& [key, indexed] : kb.entries()) entries.push_back(indexed.get());

  const std::size_t width =
      std::max<std::size_t>(5, std::to_string(options.n_pages).size());
  PageWriter writer(kb, rng);
  std::vector<GoldLabel> gold;

  for (std::size_t page = 0; page < options.n_pages; ++page) {
    std::string number = std::to_string(page + 1);
    const std::string page_id =
        "page_" + std::string(width - number.size(), '0') + number + ".html";

    std::vector<std::string> sentences;
    const std::size_t fillers = 2 + rng.below(4);
    for (std::size_t i = 0; i < fillers; ++i) {
      sentences.push_back(writer.filler_sentence());
    }

    GoldLabel label;
    label.page_id = page_id;
    if (is_dual[page]) {
      const IndexedEntry* target = nullptr;
      std::size_t sense_index = 0;
      std::vector<std::string> names;
      for (int attempt = 0; attempt < 64 && names.empty(); ++attempt) {
        target = rng.pick(entries);
        sense_index = rng.below(target->entry().senses.size());
        names = usable_names(kb, *target,
                             target->entry().senses[sense_index]);
      }
      if (names.empty()) {
        throw std::runtime_error(
            "knowledge base has no sense with a standalone evidence name");
      }
      std::string sentence;
      if (no_evidence[page]) {
        sentence = writer.headword_only_sentence(*target);
        ++corpus.no_evidence_pages;
      } else {
        rng.shuffle(names);
        const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, names.size()));
        names.resize(k);
        sentence = writer.evidence_sentence(*target, sense_index, names);
      }
      sentences.insert(sentences.begin() + static_cast<std::ptrdiff_t>(
                                                rng.below(sentences.size() + 1)),
                       std::move(sentence));
      label.expected_word = target->entry().headword;
      label.expected_meaning = target->entry().senses[sense_index].meaning;
      ++corpus.dual_pages;
    }
    write_file(corpus.pages_dir / page_id, page_html(page + 1, sentences, rng));
    gold.push_back(std::move(label));
  }

  std::string gold_text = "# page_id\texpected_word\texpected_meaning\n";
  for (const GoldLabel& label : gold) gold_text += format_gold_line(label) + '\n';
  write_file(corpus.gold_path, gold_text);
  return corpus;
}

}  // namespace pagesense
