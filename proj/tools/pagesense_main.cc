// pagesense: identify the meaning of pages that contain dual-meaning words.
//
//   pagesense kb validate --kb kb/
//   pagesense kb merge --kb kb/ new_word.xml [--replace]
//   pagesense tag --kb kb/ page.html
//   pagesense batch --kb kb/ corpus/ --out results.jsonl [--jobs 4]
//   pagesense report results.jsonl gold.tsv [--out report.csv]
//   pagesense generate --kb kb/ --pages 1000 --fraction 0.09 --seed 7 --out synth/
//
// Exit codes: 0 success, 1 validation or domain failure, 2 I/O failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "pagesense/corpus_harness.h"
#include "pagesense/disambiguator.h"
#include "pagesense/error.h"
#include "pagesense/knowledge_base.h"
#include "pagesense/results_io.h"
#include "pagesense/synthetic_corpus.h"
#include "pagesense/text_extraction.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;

struct CliConfig {
  std::string kb_dir;
  bool include_title = false;
  bool replace_on_merge = false;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::string out;
};

int fail(int code, const std::string& message) {
  std::cerr << "pagesense: " << message << '\n';
  return code;
}

pagesense::KnowledgeBase require_kb(const CliConfig& config) {
  if (config.kb_dir.empty()) {
    throw std::invalid_argument("--kb <dir> is required");
  }
  return pagesense::load_kb(config.kb_dir);
}

int cmd_kb_validate(const CliConfig& config) {
  if (config.kb_dir.empty()) {
    return fail(kExitDomain, "--kb <dir> is required");
  }
  if (!fs::is_directory(config.kb_dir)) {
    return fail(kExitIo, "'" + config.kb_dir + "' is not a directory");
  }
  const auto checks = pagesense::check_kb_dir(config.kb_dir);
  std::size_t valid = 0;
  for (const auto& check : checks) {
    const std::string file = check.file.filename().string();
    if (check.ok()) {
      ++valid;
      std::cout << "OK   " << file << "  " << check.entry->headword << " ("
                << check.entry->senses.size() << " senses)\n";
    } else {
      std::cout << "FAIL " << check.error << '\n';
    }
    for (const auto& warning : check.warnings) {
      std::cerr << "warning: " << file << ": " << warning << '\n';
    }
  }
  const std::size_t failed = checks.size() - valid;
  std::cout << valid << (valid == 1 ? " entry" : " entries") << " OK";
  if (failed > 0) std::cout << ", " << failed << " invalid";
  std::cout << '\n';
  return failed == 0 ? kExitOk : kExitDomain;
}

int cmd_kb_merge(const CliConfig& config, const std::string& entry_file) {
  const pagesense::KnowledgeBase kb = require_kb(config);
  std::ifstream in(entry_file, std::ios::binary);
  if (!in) return fail(kExitIo, "cannot read '" + entry_file + "'");
  std::ostringstream text;
  text << in.rdbuf();
  const pagesense::DualWordEntry entry = pagesense::parse_entry(text.str());

  const pagesense::IndexedEntry* existing =
      kb.find(pagesense::IndexedEntry(entry).key());
  const pagesense::KnowledgeBase merged =
      pagesense::merge_entry(kb, entry, config.replace_on_merge);

  fs::path target = fs::path(config.kb_dir) / fs::path(entry_file).filename();
  if (existing != nullptr && !existing->source().empty()) {
    target = existing->source();
  } else if (fs::exists(target)) {
    return fail(kExitDomain, "'" + target.string() +
                                 "' already exists in the knowledge base");
  }
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) return fail(kExitIo, "cannot write '" + target.string() + "'");
  out << text.str();
  out.flush();
  if (!out) return fail(kExitIo, "error writing '" + target.string() + "'");
  std::cerr << (existing ? "replaced " : "added ") << entry.headword << " -> "
            << target.string() << " (" << merged.size() << " entries)\n";
  return kExitOk;
}

int cmd_tag(const CliConfig& config, const std::string& input, bool explain) {
  const pagesense::KnowledgeBase kb = require_kb(config);
  pagesense::ExtractionOptions extraction;
  extraction.include_title = config.include_title;
  const pagesense::Document doc = pagesense::load_page(
      input, fs::path(input).filename().string(), extraction);
  const pagesense::Resolution resolution = pagesense::resolve(doc, kb);
  std::cout << pagesense::format_record(pagesense::to_record(resolution))
            << '\n';
  if (explain) {
    for (const auto& word : resolution.occurrences.words) {
      std::cerr << "word " << word.headword << " x" << word.count
                << " first@" << word.first_position << '\n';
    }
    for (const auto& match : resolution.matches) {
      std::cerr << "match '" << match.name << "' -> " << match.meaning
                << " @" << match.position << " (sentence "
                << match.sentence_index << ")\n";
    }
  }
  return kExitOk;
}

int cmd_batch(const CliConfig& config, const std::string& corpus_dir) {
  if (config.out.empty()) return fail(kExitDomain, "--out <path> is required");
  const pagesense::KnowledgeBase kb = require_kb(config);
  pagesense::BatchOptions options;
  options.extraction.include_title = config.include_title;
  options.jobs = config.jobs;
  const auto records = pagesense::run_batch(corpus_dir, kb, config.out, options);
  std::size_t dual = 0;
  std::size_t errors = 0;
  for (const auto& record : records) {
    if (record.is_error()) {
      ++errors;
      std::cerr << "error: " << record.page_id << ": " << *record.error << '\n';
    } else if (record.is_dual_meaning_flag) {
      ++dual;
    }
  }
  std::cerr << records.size() << " pages, " << dual
            << " with dual-meaning words, " << errors << " errors -> "
            << config.out << '\n';
  return kExitOk;
}

int cmd_report(const CliConfig& config, const std::string& results,
               const std::string& gold) {
  const pagesense::Evaluation evaluation = pagesense::evaluate(results, gold);
  for (const auto& page : evaluation.missing_gold) {
    std::cerr << "warning: no gold label for " << page << '\n';
  }
  if (config.out.empty()) {
    std::cout << pagesense::report_header() << '\n'
              << pagesense::format_report_row(evaluation.report) << '\n';
  } else {
    pagesense::emit_report(evaluation.report, config.out);
  }
  if (evaluation.report.flag_errors > 0) {
    std::cerr << "warning: " << evaluation.report.flag_errors
              << " page(s) with a flag that disagrees with gold\n";
  }
  return kExitOk;
}

int cmd_generate(const CliConfig& config, std::size_t pages, double fraction,
                 double no_evidence) {
  if (config.out.empty()) return fail(kExitDomain, "--out <dir> is required");
  pagesense::SyntheticOptions options;
  options.n_pages = pages;
  options.dual_fraction = fraction;
  options.no_evidence_fraction = no_evidence;
  options.seed = config.seed;
  if (fraction < 0.0 || fraction > 1.0 || !(fraction == fraction)) {
    return fail(kExitDomain, "--fraction must lie in [0, 1]");
  }
  const pagesense::KnowledgeBase kb =
      config.kb_dir.empty() ? pagesense::KnowledgeBase{} : require_kb(config);
  const auto corpus =
      pagesense::generate_synthetic_corpus(kb, options, config.out);
  std::cerr << pages << " pages (" << corpus.dual_pages << " dual, "
            << corpus.no_evidence_pages << " without evidence) -> "
            << corpus.pages_dir.string() << ", gold "
            << corpus.gold_path.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identify the meaning of web pages holding dual-meaning words"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig config;
  app.add_option("--kb", config.kb_dir, "Knowledge-base directory (*.xml)");
  app.add_flag("--include-title", config.include_title,
               "Treat <title> and description/keywords <meta> as content");
  app.add_option("--jobs", config.jobs, "Worker threads for batch runs")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "Seed for corpus generation");
  app.add_option("--out", config.out, "Output file or directory");
  app.add_flag("--replace", config.replace_on_merge,
               "kb merge: replace an existing entry with the same headword");

  CLI::App* kb = app.add_subcommand("kb", "Knowledge-base management: validate, merge <entry>");
  kb->require_subcommand(1);
  CLI::App* kb_validate = kb->add_subcommand("validate", "Validate every entry");
  std::string merge_file;
  CLI::App* kb_merge = kb->add_subcommand("merge", "Add an entry file");
  kb_merge->add_option("entry", merge_file, "Entry XML file")->required();

  std::string tag_input;
  bool explain = false;
  CLI::App* tag = app.add_subcommand("tag", "Resolve a single page");
  tag->add_option("page", tag_input, "Page file (.html, .htm or .txt)")
      ->required();
  tag->add_flag("--explain", explain, "Print occurrences and matches to stderr");

  std::string corpus_dir;
  CLI::App* batch = app.add_subcommand("batch", "Resolve every page of a corpus");
  batch->add_option("corpus", corpus_dir, "Corpus directory")->required();

  std::string results_path;
  std::string gold_path;
  CLI::App* report = app.add_subcommand("report", "Score results against gold");
  report->add_option("results", results_path, "Results file")->required();
  report->add_option("gold", gold_path, "Gold label file")->required();

  std::size_t pages = 100;
  double fraction = 0.09;
  double no_evidence = 0.0;
  CLI::App* generate =
      app.add_subcommand("generate", "Write a synthetic labeled corpus");
  generate->add_option("--pages,-n", pages, "Number of pages")
      ->capture_default_str();
  generate->add_option("--fraction", fraction,
                       "Share of pages holding a dual-meaning word")
      ->capture_default_str();
  generate->add_option("--no-evidence-fraction", no_evidence,
                       "Share of dual pages generated without evidence names")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (kb_validate->parsed()) return cmd_kb_validate(config);
    if (kb_merge->parsed()) return cmd_kb_merge(config, merge_file);
    if (tag->parsed()) return cmd_tag(config, tag_input, explain);
    if (batch->parsed()) return cmd_batch(config, corpus_dir);
    if (report->parsed()) return cmd_report(config, results_path, gold_path);
    if (generate->parsed()) {
      return cmd_generate(config, pages, fraction, no_evidence);
    }
  } catch (const pagesense::IoError& e) {
    return fail(kExitIo, e.what());
  } catch (const std::exception& e) {
    return fail(kExitDomain, e.what());
  }
  return kExitDomain;
}
