#ifndef PAGESENSE_RESULTS_IO_H_
#define PAGESENSE_RESULTS_IO_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pagesense/disambiguator.h"

namespace pagesense {

// One line of a results file. status is "resolved", "unresolved",
// "not_dual" or "error"; error records carry `error` and no verdict.
struct ResultRecord {
  std::string page_id;
  bool is_dual_meaning_flag = false;
  std::optional<std::string> selected_word;
  std::optional<std::string> meaning;
  std::string status;
  std::map<std::string, std::size_t> votes;
  std::optional<std::string> error;

  bool is_error() const { return error.has_value(); }
  bool operator==(const ResultRecord&) const = default;
};

ResultRecord to_record(const Resolution& resolution);
ResultRecord error_record(std::string page_id, std::string message);

// Single-line JSON object with sorted keys and no trailing newline.
std::string format_record(const ResultRecord& record);

// Throws Error when the line is not a valid record.
ResultRecord parse_record(std::string_view line);

// Reads a line-delimited results file; blank lines are skipped. Throws
// IoError if unreadable and Error (with the line number) if malformed.
std::vector<ResultRecord> read_results(const std::filesystem::path& path);

// Writes records one per line. Throws IoError.
void write_results(const std::filesystem::path& path,
                   const std::vector<ResultRecord>& records);

// Ground truth for one page; "-" in the file maps to nullopt.
struct GoldLabel {
  std::string page_id;
  std::optional<std::string> expected_word;
  std::optional<std::string> expected_meaning;

  bool is_dual() const { return expected_word.has_value(); }
  bool operator==(const GoldLabel&) const = default;
};

// Parses a tab-separated gold file: page_id, expected_word,
// expected_meaning. '#' lines and blank lines are ignored. Throws Error with
// the line number on malformed or duplicate rows.
std::vector<GoldLabel> parse_gold(std::string_view text);
std::vector<GoldLabel> read_gold(const std::filesystem::path& path);

std::string format_gold_line(const GoldLabel& label);

}  // namespace pagesense

#endif  // PAGESENSE_RESULTS_IO_H_
