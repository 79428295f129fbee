#include "pagesense/corpus_harness.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "pagesense/error.h"
#include "test_support.h"

namespace pagesense {
namespace {

namespace fs = std::filesystem;
using testing::fixtures_dir;
using testing::read_text;
using testing::TempDir;
using testing::write_text;

const KnowledgeBase& bank_kb() {
  static const KnowledgeBase kb = load_kb(fixtures_dir() / "kb_bank");
  return kb;
}

ResultRecord dual(std::string page, std::optional<std::string> meaning) {
  ResultRecord r;
  r.page_id = std::move(page);
  r.is_dual_meaning_flag = true;
  r.selected_word = "bank";
  r.meaning = std::move(meaning);
  r.status = r.meaning ? "resolved" : "unresolved";
  return r;
}

ResultRecord plain(std::string page) {
  ResultRecord r;
  r.page_id = std::move(page);
  r.status = "not_dual";
  return r;
}

GoldLabel gold_dual(std::string page, std::string meaning) {
  return {std::move(page), "bank", std::move(meaning)};
}

GoldLabel gold_plain(std::string page) { return {std::move(page), {}, {}}; }

TEST(ListCorpusTest, RecursiveSortedAndFiltered) {
  TempDir dir;
  write_text(dir / "b.html", "x");
  write_text(dir / "a.txt", "x");
  write_text(dir / "sub/c.htm", "x");
  write_text(dir / "notes.md", "x");
  const auto pages = list_corpus(dir.path());
  std::vector<std::string> ids;
  for (const auto& page : pages) ids.push_back(page.page_id);
  EXPECT_EQ(ids, (std::vector<std::string>{"a.txt", "b.html", "sub/c.htm"}));
}

TEST(RunBatchTest, ThreePageCorpus) {
  TempDir dir;
  const fs::path out = dir / "results.jsonl";
  const auto records = run_batch(fixtures_dir() / "pages", bank_kb(), out);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].page_id, "plain.html");
  EXPECT_EQ(records[0].status, "not_dual");
  EXPECT_EQ(records[1].page_id, "river_bank.txt");
  EXPECT_EQ(records[1].meaning, "River side");
  EXPECT_EQ(records[2].page_id, "savings_account.html");
  EXPECT_EQ(records[2].meaning, "Financial Institutes");
  EXPECT_EQ(read_results(out), records);
}

TEST(RunBatchTest, ParallelRunIsIdentical) {
  TempDir dir;
  BatchOptions parallel;
  parallel.jobs = 4;
  run_batch(fixtures_dir() / "pages", bank_kb(), dir / "one.jsonl");
  run_batch(fixtures_dir() / "pages", bank_kb(), dir / "four.jsonl", parallel);
  EXPECT_EQ(read_text(dir / "one.jsonl"), read_text(dir / "four.jsonl"));
}

TEST(RunBatchTest, EmptyCorpusWritesEmptyFile) {
  TempDir dir;
  fs::create_directories(dir / "corpus");
  EXPECT_TRUE(run_batch(dir / "corpus", bank_kb(), dir / "r.jsonl").empty());
  EXPECT_TRUE(fs::exists(dir / "r.jsonl"));
  EXPECT_EQ(fs::file_size(dir / "r.jsonl"), 0u);
}

TEST(RunBatchTest, UnreadablePageBecomesErrorRecord) {
  TempDir dir;
  write_text(dir / "corpus/good.txt", "a bank account");
  fs::create_symlink(dir / "missing.html", dir / "corpus/broken.html");
  const auto records = run_batch(dir / "corpus", bank_kb(), dir / "r.jsonl");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].page_id, "broken.html");
  EXPECT_TRUE(records[0].is_error());
  EXPECT_EQ(records[0].status, "error");
  EXPECT_EQ(records[1].meaning, "Financial Institutes");
}

TEST(RunBatchTest, UnwritableOutputThrowsIoError) {
  TempDir dir;
  EXPECT_THROW(run_batch(fixtures_dir() / "pages", bank_kb(),
                         dir / "no/such/dir/r.jsonl"),
               IoError);
}

TEST(RunBatchTest, MissingCorpusThrowsIoError) {
  TempDir dir;
  EXPECT_THROW(run_batch(dir / "absent", bank_kb(), dir / "r.jsonl"), IoError);
}

TEST(EvaluateTest, ClassifiesEveryPage) {
  const std::vector<ResultRecord> results = {
      dual("a", "Financial Institutes"), dual("b", "River side"),
      dual("c", std::nullopt), plain("d"), dual("e", "River side"),
      plain("f")};
  const std::vector<GoldLabel> gold = {
      gold_dual("a", "Financial Institutes"), gold_dual("b", "Financial Institutes"),
      gold_dual("c", "River side"), gold_plain("d"), gold_plain("e"),
      gold_dual("f", "River side")};
  const Evaluation evaluation = evaluate(results, gold);
  EXPECT_EQ(evaluation.report, (RunReport{6, 4, 1, 2, 1, 2}));
  EXPECT_EQ(evaluation.flag_mismatches, (std::vector<std::string>{"e", "f"}));
  EXPECT_TRUE(evaluation.missing_gold.empty());
}

TEST(EvaluateTest, MissingGoldAndErrorsCountAsFlagErrors) {
  const std::vector<ResultRecord> results = {
      dual("a", "River side"), error_record("b", "unreadable"), plain("c")};
  const std::vector<GoldLabel> gold = {gold_plain("b"), gold_plain("c")};
  const Evaluation evaluation = evaluate(results, gold);
  EXPECT_EQ(evaluation.report.pages_total, 3u);
  EXPECT_EQ(evaluation.report.pages_with_dual_words, 1u);
  EXPECT_EQ(evaluation.report.resolved_incorrect, 1u);
  EXPECT_EQ(evaluation.report.flag_errors, 2u);
  EXPECT_EQ(evaluation.missing_gold, (std::vector<std::string>{"a"}));
}

TEST(EvaluateTest, CountsSumToDualPages) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    std::vector<ResultRecord> results;
    std::vector<GoldLabel> gold;
    const std::size_t n = rng() % 40;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string id = "p" + std::to_string(i);
      switch (rng() % 4) {
        case 0: results.push_back(plain(id)); break;
        case 1: results.push_back(dual(id, std::nullopt)); break;
        case 2: results.push_back(dual(id, "River side")); break;
        default: results.push_back(dual(id, "Financial Institutes")); break;
      }
      if (rng() % 3 == 0) {
        gold.push_back(gold_plain(id));
      } else if (rng() % 5 != 0) {
        gold.push_back(gold_dual(id, rng() % 2 ? "River side" : "Financial Institutes"));
      }
    }
    const Evaluation evaluation = evaluate(results, gold);
    const RunReport& r = evaluation.report;
    EXPECT_EQ(r.pages_total, n);
    EXPECT_EQ(r.resolved_correct + r.resolved_incorrect + r.unresolved,
              r.pages_with_dual_words);
    EXPECT_LE(r.flag_errors, r.pages_total);

    std::shuffle(results.begin(), results.end(), rng);
    std::shuffle(gold.begin(), gold.end(), rng);
    const Evaluation shuffled = evaluate(results, gold);
    EXPECT_EQ(shuffled.report, r);
    EXPECT_EQ(shuffled.flag_mismatches, evaluation.flag_mismatches);
  }
}

TEST(EvaluateTest, FromFiles) {
  TempDir dir;
  write_results(dir / "r.jsonl", {dual("a", "River side"), plain("b")});
  write_text(dir / "gold.tsv", "# comment\na\tbank\tRiver side\nb\t-\t-\n");
  EXPECT_EQ(evaluate(dir / "r.jsonl", dir / "gold.tsv").report,
            (RunReport{2, 1, 1, 0, 0, 0}));
}

TEST(EvaluateTest, GoldErrorsPropagate) {
  TempDir dir;
  write_results(dir / "r.jsonl", {plain("a")});
  write_text(dir / "dup.tsv", "a\t-\t-\na\t-\t-\n");
  write_text(dir / "short.tsv", "a\tbank\n");
  EXPECT_THROW(evaluate(dir / "r.jsonl", dir / "dup.tsv"), Error);
  EXPECT_THROW(evaluate(dir / "r.jsonl", dir / "short.tsv"), Error);
  EXPECT_THROW(evaluate(dir / "r.jsonl", dir / "absent.tsv"), IoError);
}

TEST(ReportTest, RowRoundTrip) {
  const RunReport table{1000, 30, 22, 5, 3, 0};
  EXPECT_EQ(format_report_row(table), "1000,30,22,3,5,0");
  EXPECT_EQ(parse_report_row(format_report_row(table)), table);
  EXPECT_THROW(parse_report_row("1,2,3"), Error);
  EXPECT_THROW(parse_report_row("1,2,3,4,5,x"), Error);
}

TEST(ReportTest, EmitWritesHeaderAndRow) {
  TempDir dir;
  emit_report(RunReport{10, 2, 1, 1, 0, 0}, dir / "report.csv");
  EXPECT_EQ(read_text(dir / "report.csv"),
            "repository_size,pages_with_dual_words,correct_first_run,"
            "unresolved,incorrect,flag_errors\n10,2,1,0,1,0\n");
  EXPECT_THROW(emit_report(RunReport{}, dir / "no/dir/report.csv"), IoError);
}

}  // namespace
}  // namespace pagesense
