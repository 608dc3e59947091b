#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sif/cli.hpp"
#include "support.hpp"

namespace sif {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "sif");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& stem) { return test::ast_path(stem).string(); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Cli, FunctionsPrintsListing) {
  CliRun r = run({"functions", fixture("aztratoken")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  auto got = lines(r.out);
  ASSERT_EQ(got.size(), 10u) << r.out;
  EXPECT_EQ(got[3],
            "[In AztraToken] transferFrom(address _from, address _to, uint256 _value) returns (bool success)");
}

TEST(Cli, CfgPrintsEdgeLines) {
  CliRun r = run({"cfg", fixture("item"), "--function", "uint2str"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "Node [0] -> Node [1];\n"
            "Node [1] -> Node [2] label=True Branch;\n"
            "Node [1] -> Node [3] label=False Branch;\n"
            "Node [2] -> Node [3];\n"
            "Node [3] -> Node [4];\n"
            "Node [4] -> Node [5] label=True Branch;\n"
            "Node [4] -> Node [6] label=False Branch;\n"
            "Node [5] -> Node [4];\n"
            "Node [6] -> Node [7];\n"
            "Node [7] -> Node [8] label=True Branch;\n"
            "Node [7] -> Node [9] label=False Branch;\n"
            "Node [8] -> Node [7];\n");
}

TEST(Cli, CfgStructuredOutput) {
  CliRun r = run({"--format", "structured", "cfg", fixture("item"), "--function", "uint2str"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["blocks"].size(), 10u);
  EXPECT_EQ(doc["edges"].size(), 12u);
}

TEST(Cli, CfgErrors) {
  CliRun missing = run({"cfg", fixture("item"), "--function", "nope"});
  EXPECT_EQ(missing.code, kExitFailure);
  EXPECT_NE(missing.err.find("sif: "), std::string::npos);
  CliRun usage = run({"cfg", fixture("item")});
  EXPECT_EQ(usage.code, kExitUsage);
}

TEST(Cli, CallgraphDot) {
  CliRun r = run({"callgraph", fixture("call_graph"), "--dot", "-"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("digraph callgraph {", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("\"Other.call\" -> \"Calls.f\";"), std::string::npos) << r.out;
}

TEST(Cli, Loops) {
  CliRun r = run({"--format", "structured", "loops", fixture("loops")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["loops"],
            test::raw_count(test::raw_unit("loops"),
                            {"ForStatement", "WhileStatement", "DoWhileStatement"}));
}

TEST(Cli, DiffIdenticalAndVariants) {
  CliRun same = run({"diff", fixture("ballot"), fixture("ballot")});
  EXPECT_EQ(same.code, kExitOk);
  EXPECT_EQ(same.out, "");
  CliRun comments = run({"diff", fixture("comments"), fixture("comments_stripped")});
  EXPECT_EQ(comments.out, "");
  CliRun other = run({"diff", fixture("ballot"), fixture("auction")});
  EXPECT_EQ(other.code, kExitOk);
  EXPECT_EQ(other.out.rfind("/1 field-mismatch ContractDefinition.name: \"Ballot\" vs \"SimpleAuction\"", 0),
            0u)
      << other.out;
}

TEST(Cli, RenameWritesOutputFile) {
  auto path = std::filesystem::temp_directory_path() / "sif_cli_rename.sol";
  CliRun r = run({"rename", fixture("struct_request"), "--kind", "struct", "--old", "Request", "--new",
               "DirectRequest", "-o", path.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "");
  std::string text = test::read_text(path);
  EXPECT_EQ(test::count_word(text, "Request"), 0u);
  EXPECT_NE(r.err.find("renamed"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, RenameBadKindIsUsageError) {
  CliRun r = run({"rename", fixture("struct_request"), "--kind", "widget", "--old", "a", "--new", "b"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(Cli, SeedToStdout) {
  CliRun r = run({"seed", fixture("auction"), "--vuln", "unsigned-underflow"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("uint256 result = minuend - subtrahend;"), std::string::npos);
  EXPECT_NE(r.err.find("seeded-fault"), std::string::npos) << r.err;
  CliRun bad = run({"seed", fixture("auction"), "--vuln", "reentrancy"});
  EXPECT_EQ(bad.code, kExitUsage);
  CliRun none = run({"seed", fixture("erc20_interface"), "--vuln", "division-by-zero"});
  EXPECT_EQ(none.code, kExitFailure);
}

TEST(Cli, AssertStructured) {
  CliRun r = run({"--format", "structured", "assert", fixture("item")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_NE(doc["source"].get<std::string>().find("assert(len >= k && len >= 1);"),
            std::string::npos);
  EXPECT_FALSE(doc["report"].empty());
  EXPECT_EQ(doc["command"], "assert");
}

TEST(Cli, AssertOnlyAndNoEmit) {
  CliRun r = run({"--no-emit", "assert", fixture("arithmetic_sites"), "--only", "division-by-zero"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "");
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 3) << r.err;
}

TEST(Cli, MakeSignedAndRegen) {
  CliRun signed_out = run({"make-signed", fixture("item")});
  EXPECT_EQ(signed_out.code, kExitOk);
  EXPECT_NE(signed_out.out.find("function uint2str(int i)"), std::string::npos);
  CliRun regen = run({"regen", fixture("ballot")});
  EXPECT_EQ(regen.out, test::read_text(test::corpus_dir() / "ballot.expected.sol"));
}

TEST(Cli, CorpusWithoutCompiler) {
  CliRun r = run({"corpus", test::corpus_dir().string()});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("failed 0 (100.0%)"), std::string::npos) << r.out;
}

TEST(Cli, CorpusFailureSetsExitCode) {
  auto dir = std::filesystem::temp_directory_path() / "sif_cli_corpus";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "broken.ast.json") << "{";
  std::filesystem::copy_file(test::ast_path("ballot"), dir / "ballot.ast.json",
                             std::filesystem::copy_options::overwrite_existing);
  std::filesystem::copy_file(test::sol_path("ballot"), dir / "ballot.sol",
                             std::filesystem::copy_options::overwrite_existing);
  CliRun r = run({"corpus", dir.string()});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.out.find("FAIL broken.ast.json  [ingest]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("processed 2, succeeded 1, failed 1 (50.0%)"), std::string::npos) << r.out;
  std::filesystem::remove_all(dir);
}

TEST(Cli, MissingInputAndUnknownCommand) {
  CliRun missing = run({"loops", "/nonexistent/x.json"});
  EXPECT_EQ(missing.code, kExitFailure);
  EXPECT_EQ(missing.err.rfind("sif: io-error:", 0), 0u) << missing.err;
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  CliRun help = run({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("Subcommands:"), std::string::npos);
}

TEST(Cli, SolInputNeedsCompiler) {
  CliRun r = run({"--solc", "/nonexistent/solc", "functions", test::sol_path("ballot").string()});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("compiler-not-found"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace sif
