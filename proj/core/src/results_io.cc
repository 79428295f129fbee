#include "pagesense/results_io.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pagesense/error.h"

namespace pagesense {
namespace {

using nlohmann::json;

json optional_string(const std::optional<std::string>& value) {
  return value ? json(*value) : json(nullptr);
}

std::optional<std::string> read_optional(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

ResultRecord to_record(const Resolution& resolution) {
  ResultRecord record;
  record.page_id = resolution.page_id;
  record.is_dual_meaning_flag = resolution.is_dual_meaning_flag;
  record.selected_word = resolution.selected_word;
  record.meaning = resolution.meaning;
  record.status = status_name(resolution.status);
  for (const auto& [meaning, vote] : resolution.votes.meanings) {
    record.votes.emplace(meaning, vote.votes);
  }
  return record;
}

ResultRecord error_record(std::string page_id, std::string message) {
  ResultRecord record;
  record.page_id = std::move(page_id);
  record.status = "error";
  record.error = std::move(message);
  return record;
}

std::string format_record(const ResultRecord& record) {
  json object = {
      {"page_id", record.page_id},
      {"is_dual_meaning_flag", record.is_dual_meaning_flag},
      {"selected_word", optional_string(record.selected_word)},
      {"meaning", optional_string(record.meaning)},
      {"status", record.status},
      {"votes", record.votes},
  };
  if (record.error) object["error"] = *record.error;
  return object.dump(-1, ' ', false, json::error_handler_t::replace);
}

ResultRecord parse_record(std::string_view line) {
  json object;
  try {
    object = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed result record: ") + e.what());
  }
  if (!object.is_object()) throw Error("result record is not an object");
  try {
    ResultRecord record;
    record.page_id = object.at("page_id").get<std::string>();
    record.status = object.at("status").get<std::string>();
    record.is_dual_meaning_flag =
        object.value("is_dual_meaning_flag", false);
    record.selected_word = read_optional(object, "selected_word");
    record.meaning = read_optional(object, "meaning");
    record.error = read_optional(object, "error");
    if (auto it = object.find("votes"); it != object.end() && !it->is_null()) {
      record.votes = it->get<std::map<std::string, std::size_t>>();
    }
    return record;
  } catch (const json::exception& e) {
    throw Error(std::string("invalid result record: ") + e.what());
  }
}

std::vector<ResultRecord> read_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read results file '" + path.string() + "'");
  std::vector<ResultRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view view = strip_cr(line);
    if (is_blank(view)) continue;
    try {
      records.push_back(parse_record(view));
    } catch (const Error& e) {
      throw Error(path.filename().string() + ": line " +
                  std::to_string(line_number) + ": " + e.what());
    }
  }
  return records;
}

void write_results(const std::filesystem::path& path,
                   const std::vector<ResultRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write results file '" + path.string() + "'");
  for (const ResultRecord& record : records) {
    out << format_record(record) << '\n';
  }
  out.flush();
  if (!out) throw IoError("error writing results file '" + path.string() + "'");
}

std::vector<GoldLabel> parse_gold(std::string_view text) {
  std::vector<GoldLabel> labels;
  std::set<std::string, std::less<>> seen;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = strip_cr(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_number;
    if (is_blank(line) || line.front() == '#') continue;

    auto fail = [&](const std::string& why) {
      return Error("gold line " + std::to_string(line_number) + ": " + why);
    };
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3) {
      throw fail("expected 3 tab-separated columns, found " +
                 std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      throw fail("empty column (use '-' for absent values)");
    }
    if ((fields[1] == "-") != (fields[2] == "-")) {
      throw fail("expected_word and expected_meaning must both be '-' or "
                 "both be present");
    }
    if (!seen.insert(std::string(fields[0])).second) {
      throw fail("duplicate page_id '" + std::string(fields[0]) + "'");
    }
    GoldLabel label;
    label.page_id = std::string(fields[0]);
    if (fields[1] != "-") {
      label.expected_word = std::string(fields[1]);
      label.expected_meaning = std::string(fields[2]);
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<GoldLabel> read_gold(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read gold file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_gold(buffer.str());
}

std::string format_gold_line(const GoldLabel& label) {
  return label.page_id + '\t' + label.expected_word.value_or("-") + '\t' +
         label.expected_meaning.value_or("-");
}

}  // namespace pagesense
