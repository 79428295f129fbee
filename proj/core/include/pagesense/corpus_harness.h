#ifndef PAGESENSE_CORPUS_HARNESS_H_
#define PAGESENSE_CORPUS_HARNESS_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pagesense/knowledge_base.h"
#include "pagesense/results_io.h"
#include "pagesense/text_extraction.h"

namespace pagesense {

struct BatchOptions {
  ExtractionOptions extraction;
  unsigned jobs = 1;
};

// Page files of a corpus directory (recursive), keyed by their path
// relative to the directory with '/' separators. Sorted by page id.
struct CorpusPage {
  std::string page_id;
  std::filesystem::path path;
};
std::vector<CorpusPage> list_corpus(const std::filesystem::path& corpus_dir);

// Resolves every page and writes one record per page to `out_path`, sorted
// by page id. A page that cannot be read yields an error record; an
// unwritable `out_path` throws IoError before any page is processed.
std::vector<ResultRecord> run_batch(const std::filesystem::path& corpus_dir,
                                    const KnowledgeBase& kb,
                                    const std::filesystem::path& out_path,
                                    const BatchOptions& options = {});

// Counters of one evaluated run.
struct RunReport {
  std::size_t pages_total = 0;
  std::size_t pages_with_dual_words = 0;
  std::size_t resolved_correct = 0;
  std::size_t resolved_incorrect = 0;
  std::size_t unresolved = 0;
  std::size_t flag_errors = 0;

  bool operator==(const RunReport&) const = default;
};

struct Evaluation {
  RunReport report;
  // Result pages with no gold row.
  std::vector<std::string> missing_gold;
  // Result pages whose flag disagrees with gold (missing gold included).
  std::vector<std::string> flag_mismatches;
};

Evaluation evaluate(const std::vector<ResultRecord>& results,
                    const std::vector<GoldLabel>& gold);
Evaluation evaluate(const std::filesystem::path& results_path,
                    const std::filesystem::path& gold_path);

// "repository_size,pages_with_dual_words,correct_first_run,unresolved,
//  incorrect,flag_errors"
std::string_view report_header();
std::string format_report_row(const RunReport& report);
// Inverse of format_report_row. Throws Error on malformed input.
RunReport parse_report_row(std::string_view row);

// Writes the header line and one row. Throws IoError.
void emit_report(const RunReport& report, const std::filesystem::path& path);

}  // namespace pagesense

#endif  // PAGESENSE_CORPUS_HARNESS_H_
