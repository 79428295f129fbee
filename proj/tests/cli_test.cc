#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include "pagesense/results_io.h"
#include "test_support.h"

namespace pagesense {
namespace {

namespace fs = std::filesystem;
using testing::fixtures_dir;
using testing::read_text;
using testing::sample_kb_dir;
using testing::TempDir;
using testing::write_text;

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& arg) {
  std::string quoted = "'";
  for (char c : arg) {
    if (c == '\'') {
      quoted += "'\\''";
    } else {
      quoted += c;
    }
  }
  return quoted + "'";
}

Invocation run(std::initializer_list<std::string> args) {
  TempDir capture;
  std::string command = quote(PAGESENSE_CLI);
  for (const auto& arg : args) command += ' ' + quote(arg);
  command += " >" + quote((capture / "out").string()) + " 2>" +
             quote((capture / "err").string());
  const int status = std::system(command.c_str());
  Invocation result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_text(capture / "out");
  result.err = read_text(capture / "err");
  return result;
}

const std::string kBankKb = (fixtures_dir() / "kb_bank").string();

TEST(CliTest, HelpListsFlags) {
  const Invocation r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--kb", "--include-title", "--jobs", "--seed",
                           "--out", "--replace", "validate", "tag", "batch",
                           "report", "generate"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
}

TEST(CliTest, UnknownCommandIsUsageError) {
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
}

TEST(CliTest, ValidateBankDirectory) {
  const Invocation r = run({"kb", "validate", "--kb", kBankKb});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1 entry OK"), std::string::npos) << r.out;
}

TEST(CliTest, ValidateReportsMissingDmwId) {
  TempDir kb;
  fs::copy_file(fixtures_dir() / "invalid/missing_dmw_id.xml", kb / "bad.xml");
  const Invocation r = run({"kb", "validate", "--kb", kb.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("dmw_id required"), std::string::npos) << r.out;
}

TEST(CliTest, ValidateEmptyDirectory) {
  TempDir kb;
  const Invocation r = run({"kb", "validate", "--kb", kb.path().string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0 entries"), std::string::npos) << r.out;
}

TEST(CliTest, ValidateMissingDirectoryIsIoFailure) {
  EXPECT_EQ(run({"kb", "validate", "--kb", "/nonexistent/kb"}).code, 2);
}

TEST(CliTest, TagExamples) {
  const Invocation john =
      run({"tag", "--kb", kBankKb, (fixtures_dir() / "pages/savings_account.html").string()});
  EXPECT_EQ(john.code, 0) << john.err;
  EXPECT_EQ(parse_record(john.out).meaning, "Financial Institutes");

  const Invocation peter =
      run({"--kb", kBankKb, "tag", (fixtures_dir() / "pages/river_bank.txt").string()});
  EXPECT_EQ(peter.code, 0) << peter.err;
  EXPECT_EQ(parse_record(peter.out).meaning, "River side");

  const Invocation plain =
      run({"tag", "--kb", kBankKb, (fixtures_dir() / "pages/plain.html").string()});
  EXPECT_EQ(plain.code, 0);
  EXPECT_FALSE(parse_record(plain.out).is_dual_meaning_flag);
}

TEST(CliTest, TagExplainWritesMatchesToStderr) {
  const Invocation r = run({"tag", "--explain", "--kb", kBankKb,
                     (fixtures_dir() / "pages/savings_account.html").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("account"), std::string::npos) << r.err;
}

TEST(CliTest, TagUnreadableInputIsIoFailure) {
  EXPECT_EQ(run({"tag", "--kb", kBankKb, "/nonexistent/page.html"}).code, 2);
}

TEST(CliTest, TagWithoutKbFails) {
  EXPECT_EQ(
      run({"tag", (fixtures_dir() / "pages/plain.html").string()}).code, 1);
}

TEST(CliTest, GenerateBatchReportEndToEnd) {
  TempDir work;
  const std::string synth = (work / "synth").string();
  const Invocation gen = run({"generate", "--kb", sample_kb_dir().string(), "-n", "40",
                       "--fraction", "0.25", "--seed", "3", "--out", synth});
  ASSERT_EQ(gen.code, 0) << gen.err;

  const std::string results = (work / "results.jsonl").string();
  const Invocation batch = run({"batch", "--kb", sample_kb_dir().string(),
                         synth + "/pages", "--out", results, "--jobs", "3"});
  ASSERT_EQ(batch.code, 0) << batch.err;

  const Invocation report = run({"report", results, synth + "/gold.tsv"});
  EXPECT_EQ(report.code, 0) << report.err;
  EXPECT_EQ(report.out,
            "repository_size,pages_with_dual_words,correct_first_run,"
            "unresolved,incorrect,flag_errors\n40,10,10,0,0,0\n");

  const std::string csv = (work / "report.csv").string();
  EXPECT_EQ(run({"report", results, synth + "/gold.tsv", "--out", csv}).code, 0);
  EXPECT_EQ(read_text(csv), report.out);
}

TEST(CliTest, ReportWarnsOnMissingGold) {
  TempDir work;
  const std::string results = (work / "r.jsonl").string();
  ASSERT_EQ(run({"batch", "--kb", kBankKb, (fixtures_dir() / "pages").string(),
                 "--out", results}).code,
            0);
  write_text(work / "gold.tsv", "savings_account.html\tbank\tFinancial Institutes\n");
  const Invocation r = run({"report", results, (work / "gold.tsv").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("river_bank.txt"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("\n3,2,1,0,1,2\n"), std::string::npos) << r.out;
}

TEST(CliTest, ReportMalformedGoldFails) {
  TempDir work;
  write_text(work / "r.jsonl", "");
  write_text(work / "gold.tsv", "only-one-column\n");
  const Invocation r = run({"report", (work / "r.jsonl").string(),
                     (work / "gold.tsv").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
}

TEST(CliTest, GenerateRejectsBadFraction) {
  TempDir work;
  EXPECT_EQ(run({"generate", "--kb", kBankKb, "--fraction", "1.5", "--out",
                 (work / "s").string()}).code,
            1);
}

TEST(CliTest, BatchToUnwritablePathIsIoFailure) {
  EXPECT_EQ(run({"batch", "--kb", kBankKb, (fixtures_dir() / "pages").string(),
                 "--out", "/nonexistent/dir/r.jsonl"}).code,
            2);
}

TEST(CliTest, MergeAddsEntryAndRefusesDuplicate) {
  TempDir kb;
  fs::copy_file(fixtures_dir() / "kb_bank/bank.xml", kb / "bank.xml");
  const std::string bat = (fixtures_dir() / "bat_minimal.xml").string();
  EXPECT_EQ(run({"kb", "merge", "--kb", kb.path().string(), bat}).code, 0);
  EXPECT_TRUE(fs::exists(kb / "bat_minimal.xml"));
  EXPECT_NE(run({"kb", "validate", "--kb", kb.path().string()})
                .out.find("2 entries OK"),
            std::string::npos);

  EXPECT_EQ(run({"kb", "merge", "--kb", kb.path().string(), bat}).code, 1);
  EXPECT_EQ(
      run({"kb", "merge", "--replace", "--kb", kb.path().string(), bat}).code,
      0);
}

}  // namespace
}  // namespace pagesense
