#include "pagesense/corpus_harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <map>
#include <thread>

#include "pagesense/disambiguator.h"
#include "pagesense/error.h"

namespace pagesense {

std::vector<CorpusPage> list_corpus(const std::filesystem::path& corpus_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::recursive_directory_iterator it(corpus_dir, ec);
  if (ec) {
    throw IoError("cannot read corpus directory '" + corpus_dir.string() +
                  "': " + ec.message());
  }
  std::vector<CorpusPage> pages;
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) {
      throw IoError("cannot list corpus directory '" + corpus_dir.string() +
                    "': " + ec.message());
    }
    const fs::directory_entry& entry = *it;
    std::error_code type_ec;
    if (entry.is_directory(type_ec) || !is_page_file(entry.path())) continue;
    pages.push_back(CorpusPage{
        entry.path().lexically_relative(corpus_dir).generic_string(),
        entry.path()});
  }
  std::sort(pages.begin(), pages.end(),
            [](const CorpusPage& a, const CorpusPage& b) {
              return a.page_id < b.page_id;
            });
  return pages;
}

std::vector<ResultRecord> run_batch(const std::filesystem::path& corpus_dir,
                                    const KnowledgeBase& kb,
                                    const std::filesystem::path& out_path,
                                    const BatchOptions& options) {
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write results file '" + out_path.string() + "'");
  }

  const std::vector<CorpusPage> pages = list_corpus(corpus_dir);
  std::vector<ResultRecord> records(pages.size());

  auto process = [&](std::size_t index) {
    const CorpusPage& page = pages[index];
    try {
      const Document doc =
          load_page(page.path, page.page_id, options.extraction);
      records[index] = to_record(resolve(doc, kb));
    } catch (const std::exception& e) {
      records[index] = error_record(page.page_id, e.what());
    }
  };

  const std::size_t jobs =
      std::min<std::size_t>(std::max(1u, options.jobs), pages.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < pages.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < pages.size(); i = next++) process(i);
      });
    }
  }

  // Pages are already ordered by id; keep the sort so the contract does not
  // depend on list_corpus.
  std::stable_sort(records.begin(), records.end(),
                   [](const ResultRecord& a, const ResultRecord& b) {
                     return a.page_id < b.page_id;
                   });
  for (const ResultRecord& record : records) {
    out << format_record(record) << '\n';
  }
  out.flush();
  if (!out) {
    throw IoError("error writing results file '" + out_path.string() + "'");
  }
  return records;
}

Evaluation evaluate(const std::vector<ResultRecord>& results,
                    const std::vector<GoldLabel>& gold) {
  std::map<std::string_view, const GoldLabel*> by_page;
  for (const GoldLabel& label : gold) by_page.emplace(label.page_id, &label);

  Evaluation evaluation;
  RunReport& report = evaluation.report;
  for (const ResultRecord& record : results) {
    ++report.pages_total;
    auto it = by_page.find(record.page_id);
    const GoldLabel* label = it == by_page.end() ? nullptr : it->second;
    if (label == nullptr) evaluation.missing_gold.push_back(record.page_id);

    const bool flag_ok = label != nullptr && !record.is_error() &&
                         label->is_dual() == record.is_dual_meaning_flag;
    if (!flag_ok) {
      ++report.flag_errors;
      evaluation.flag_mismatches.push_back(record.page_id);
    }

    if (record.is_error() || !record.is_dual_meaning_flag) continue;
    ++report.pages_with_dual_words;
    if (!record.meaning) {
      ++report.unresolved;
    } else if (label != nullptr && label->is_dual() &&
               record.selected_word == label->expected_word &&
               record.meaning == label->expected_meaning) {
      ++report.resolved_correct;
    } else {
      ++report.resolved_incorrect;
    }
  }
  std::sort(evaluation.missing_gold.begin(), evaluation.missing_gold.end());
  std::sort(evaluation.flag_mismatches.begin(),
            evaluation.flag_mismatches.end());
  return evaluation;
}

Evaluation evaluate(const std::filesystem::path& results_path,
                    const std::filesystem::path& gold_path) {
  return evaluate(read_results(results_path), read_gold(gold_path));
}

std::string_view report_header() {
  return "repository_size,pages_with_dual_words,correct_first_run,unresolved,"
         "incorrect,flag_errors";
}

std::string format_report_row(const RunReport& report) {
  return std::to_string(report.pages_total) + ',' +
         std::to_string(report.pages_with_dual_words) + ',' +
         std::to_string(report.resolved_correct) + ',' +
         std::to_string(report.unresolved) + ',' +
         std::to_string(report.resolved_incorrect) + ',' +
         std::to_string(report.flag_errors);
}

RunReport parse_report_row(std::string_view row) {
  if (!row.empty() && row.back() == '\n') row.remove_suffix(1);
  if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
  std::vector<std::size_t> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = row.find(',', start);
    const std::string_view field = row.substr(start, comma - start);
    std::size_t value = 0;
    const auto [end, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() ||
        end != field.data() + field.size()) {
      throw Error("malformed report row '" + std::string(row) + "'");
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (values.size() != 6) {
    throw Error("report row needs 6 columns, found " +
                std::to_string(values.size()));
  }
  RunReport report;
  report.pages_total = values[0];
  report.pages_with_dual_words = values[1];
  report.resolved_correct = values[2];
  report.unresolved = values[3];
  report.resolved_incorrect = values[4];
  report.flag_errors = values[5];
  return report;
}

void emit_report(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report '" + path.string() + "'");
  out << report_header() << '\n' << format_report_row(report) << '\n';
  out.flush();
  if (!out) throw IoError("error writing report '" + path.string() + "'");
}

}  // namespace pagesense
