#include <gtest/gtest.h>

#include <fstream>

#include "json.hpp"
#include "sif/corpus.hpp"
#include "support.hpp"

namespace sif {
namespace {

namespace fs = std::filesystem;

class ScratchCorpus : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sif_corpus_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  void add(const std::string& stem, bool golden = true) {
    fs::copy_file(test::ast_path(stem), dir_ / (stem + ".ast.json"));
    fs::copy_file(test::sol_path(stem), dir_ / (stem + ".sol"));
    if (golden) {
      fs::copy_file(test::corpus_dir() / (stem + ".expected.sol"), dir_ / (stem + ".expected.sol"));
    }
  }

  fs::path dir_;
};

TEST(Corpus, StemDropsAstSuffixes) {
  EXPECT_EQ(corpus_stem("a/b.ast.json"), "b");
  EXPECT_EQ(corpus_stem("c.json"), "c");
}

TEST(Corpus, CheckedInCorpusPassesAgainstGoldens) {
  CorpusReport report = run_corpus(test::corpus_dir());
  EXPECT_EQ(report.processed(), test::corpus_stems().size());
  EXPECT_EQ(report.failures, 0u) << report.to_text();
  for (const auto& f : report.files) EXPECT_TRUE(f.golden_checked) << f.file;
}

TEST(Corpus, NotADirectory) {
  try {
    run_corpus(test::ast_path("ballot"));
    FAIL() << "expected Io";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST_F(ScratchCorpus, EmptyDirectoryWarns) {
  CorpusReport report = run_corpus(dir_);
  EXPECT_EQ(report.processed(), 0u);
  ASSERT_EQ(report.warnings.size(), 1u);
  EXPECT_NE(report.to_text().find("processed 0, succeeded 0, failed 0 (100.0%)"), std::string::npos);
}

TEST_F(ScratchCorpus, GoldenMismatchIsReported) {
  add("ballot");
  add("ownable");
  std::ofstream(dir_ / "ownable.expected.sol", std::ios::app) << "// stale\n";
  CorpusReport report = run_corpus(dir_, {.workers = 2});
  ASSERT_EQ(report.processed(), 2u);
  EXPECT_EQ(report.successes, 1u);
  const auto& bad = report.files[1];
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.stage, "golden");
  EXPECT_NE(bad.diagnostic.find("// stale"), std::string::npos) << bad.diagnostic;
  auto doc = nlohmann::json::parse(report.to_json());
  EXPECT_EQ(doc["failures"], 1);
  EXPECT_EQ(doc["files"][1]["stage"], "golden");
}

TEST_F(ScratchCorpus, MissingCompilerFallsBackToGoldens) {
  add("ballot");
  CorpusOptions options;
  options.with_compiler = true;
  options.compiler.executable = "/nonexistent/solc";
  CorpusReport report = run_corpus(dir_, options);
  EXPECT_EQ(report.failures, 0u);
  ASSERT_EQ(report.warnings.size(), 1u);
  EXPECT_NE(report.warnings[0].find("no compiler"), std::string::npos);
  EXPECT_FALSE(report.files[0].recompiled);
}

TEST_F(ScratchCorpus, RecompilesWhenCompilerPresent) {
  if (!test::have_compiler()) GTEST_SKIP() << "no compiler (set SIF_SOLC)";
  add("imports", false);
  add("imported_base", false);
  CorpusReport report = run_corpus(dir_, {.with_compiler = true});
  EXPECT_EQ(report.failures, 0u) << report.to_text();
  for (const auto& f : report.files) EXPECT_TRUE(f.recompiled) << f.file;
}

}  // namespace
}  // namespace sif
