#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "sif/codegen.hpp"
#include "sif/ingest.hpp"
#include "support.hpp"

namespace sif {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Io;
}

// One-function unit whose body holds `statement` (compact JSON).
std::string unit_with_statement(const std::string& statement) {
  return R"({"nodeType":"SourceUnit","id":1,"src":"0:0:0","absolutePath":"t.sol",
    "nodes":[{"nodeType":"ContractDefinition","id":2,"src":"0:0:0","name":"C",
      "contractKind":"contract","baseContracts":[],"nodes":[
      {"nodeType":"FunctionDefinition","id":3,"src":"0:0:0","name":"f",
       "kind":"function","visibility":"public","stateMutability":"nonpayable",
       "modifiers":[],
       "parameters":{"nodeType":"ParameterList","id":4,"src":"0:0:0","parameters":[]},
       "returnParameters":{"nodeType":"ParameterList","id":5,"src":"0:0:0","parameters":[]},
       "body":{"nodeType":"Block","id":6,"src":"0:0:0","statements":[)" +
         statement + "]}}]}]}";
}

TEST(Ingest, EveryFixtureLoadsClean) {
  auto stems = test::corpus_stems();
  ASSERT_GE(stems.size(), 25u);
  for (const auto& stem : stems) {
    SourceUnit unit = test::load_fixture(stem);
    EXPECT_EQ(unit.root().kind(), NodeKind::SourceUnit);
    auto diagnostics = validate(unit);
    EXPECT_TRUE(diagnostics.empty())
        << stem << ": " << (diagnostics.empty() ? "" : to_string(diagnostics[0]));
  }
}

TEST(Ingest, CorpusCoversEveryNodeKind) {
  std::set<NodeKind> seen;
  for (const auto& stem : test::corpus_stems()) {
    test::load_fixture(stem).root().for_each(
        [&](const AstNode& n) { seen.insert(n.kind()); });
  }
  for (NodeKind k : kAllNodeKinds) {
    EXPECT_TRUE(seen.count(k)) << "no fixture contains " << to_string(k);
  }
}

TEST(Ingest, EveryCompilerNodeBecomesOneAstNode) {
  for (const auto& stem : test::corpus_stems()) {
    auto raw = test::raw_unit(stem);
    // Nodes that the model folds into attributes of their parent.
    std::size_t folded = test::raw_count(raw, {"StructuredDocumentation"});
    std::size_t raw_nodes = 0;
    std::function<void(const nlohmann::json&)> count = [&](const nlohmann::json& j) {
      if (j.is_object() && j.contains("nodeType")) ++raw_nodes;
      if (j.is_object() || j.is_array()) {
        for (const auto& v : j) count(v);
      }
    };
    count(raw);
    EXPECT_EQ(test::load_fixture(stem).node_count(), raw_nodes - folded) << stem;
  }
}

TEST(Ingest, AztraTokenHasOneContractWithTenFunctions) {
  SourceUnit unit = test::load_fixture("aztratoken");
  std::size_t contracts = 0, functions = 0;
  for (const auto& top : unit.root().children()) {
    if (top.kind() != NodeKind::ContractDefinition) continue;
    ++contracts;
    for (const auto& member : top.children()) {
      functions += member.kind() == NodeKind::FunctionDefinition;
    }
  }
  EXPECT_EQ(contracts, 1u);
  EXPECT_EQ(functions, 10u);
  EXPECT_EQ(unit.solidity_version(), "^0.4.16");
}

TEST(Ingest, StructRequestHasTwoMembers) {
  SourceUnit unit = test::load_fixture("struct_request");
  const AstNode* request = nullptr;
  unit.root().for_each([&](const AstNode& n) {
    if (n.kind() == NodeKind::StructDefinition) request = &n;
  });
  ASSERT_NE(request, nullptr);
  EXPECT_EQ(request->get_string("name"), "Request");
  EXPECT_EQ(request->child_count(), 2u);
  EXPECT_EQ(request->child(0).get_string("name"), "data");
  EXPECT_EQ(request->child(1).get_string("name"), "callback");
}

TEST(Ingest, ChildOrderFollowsSourceOrder) {
  for (const auto& stem : test::corpus_stems()) {
    SourceUnit unit = test::load_fixture(stem);
    std::function<void(const AstNode&)> check = [&](const AstNode& n) {
      // These two follow the document's field layout rather than text order:
      // a do-while stores its condition first, a function its return list
      // before its modifiers.
      if (n.kind() == NodeKind::DoWhileStatement) {
        EXPECT_TRUE(is_expression(n.child(0).kind())) << stem << " " << n.id();
        EXPECT_TRUE(is_statement(n.child(1).kind())) << stem << " " << n.id();
      }
      bool layout = n.kind() == NodeKind::DoWhileStatement || n.kind() == NodeKind::FunctionDefinition;
      if (n.kind() == NodeKind::FunctionDefinition) {
        EXPECT_EQ(n.child(0).kind(), NodeKind::ParameterList);
        EXPECT_EQ(n.child(1).kind(), NodeKind::ParameterList);
      }
      const AstNode* prev = nullptr;
      for (const auto& c : n.children()) {
        if (!layout && prev && prev->span() && c.span() && prev->span()->file == c.span()->file) {
          EXPECT_LE(prev->span()->offset, c.span()->offset)
              << stem << ": children of " << to_string(n.kind()) << " " << n.id();
        }
        prev = &c;
        check(c);
      }
    };
    check(unit.root());
  }
}

TEST(Ingest, MalformedDocumentIsParseError) {
  EXPECT_EQ(code_of([] { load_ast("{"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_ast(""); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_ast(R"({"nodeType":"SourceUnit"})"); }),
            ErrorCode::ParseError);
}

TEST(Ingest, UnknownKindIsNamed) {
  std::string doc = unit_with_statement(R"({"nodeType":"YulBlock","id":7,"src":"0:0:0"})");
  try {
    load_ast(doc);
    FAIL() << "expected UnknownKind";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownKind);
    EXPECT_NE(std::string(e.what()).find("YulBlock"), std::string::npos);
  }
}

TEST(Ingest, ArityViolation) {
  // An if statement without a then-branch.
  std::string doc = unit_with_statement(
      R"({"nodeType":"IfStatement","id":7,"src":"0:0:0",
          "condition":{"nodeType":"Literal","id":8,"src":"0:0:0","kind":"bool",
                       "value":"true","typeDescriptions":{"typeString":"bool"}},
          "trueBody":null,"falseBody":null})");
  EXPECT_EQ(code_of([&] { load_ast(doc); }), ErrorCode::ArityViolation);
}

TEST(Ingest, MinimalDocumentLoads) {
  SourceUnit unit = load_ast(unit_with_statement(""));
  EXPECT_EQ(unit.node_count(), 6u);
  EXPECT_EQ(emit_source(unit),
            "contract C {\n    function f() public {\n    }\n}\n");
}

TEST(Validate, DuplicateIdIsReported) {
  AstNode root(1, NodeKind::SourceUnit);
  AstNode a(7, NodeKind::ContractDefinition);
  a.set("name", std::string("A"));
  AstNode b(7, NodeKind::ContractDefinition);
  b.set("name", std::string("B"));
  root.add_child(a);
  root.add_child(b);
  auto diagnostics = validate(SourceUnit(std::move(root)));
  ASSERT_FALSE(diagnostics.empty());
  EXPECT_EQ(diagnostics[0].message, "duplicate node id 7");
}

TEST(Validate, DeletedDeclarationLeavesDanglingReference) {
  SourceUnit unit = test::load_fixture("call_graph");
  // Drop Calls.g, which f and h call.
  AstNode& contract = unit.root().child(1);
  ASSERT_EQ(contract.get_string("name"), "Calls");
  std::size_t index = 0;
  for (; index < contract.child_count(); ++index) {
    if (contract.child(index).kind() == NodeKind::FunctionDefinition &&
        contract.child(index).get_string("name") == "g") {
      break;
    }
  }
  ASSERT_LT(index, contract.child_count());
  unit.apply(contract.id(), RemoveChild{index});
  auto diagnostics = validate(unit);
  ASSERT_FALSE(diagnostics.empty());
  for (const auto& d : diagnostics) {
    EXPECT_EQ(d.severity, Diagnostic::Severity::Warning);
    EXPECT_NE(d.message.find("dangling reference"), std::string::npos) << d.message;
  }
}

TEST(Compiler, MissingExecutable) {
  CompilerConfig config;
  config.executable = "/nonexistent/solc";
  EXPECT_FALSE(compiler_available(config));
  try {
    compile_source(test::sol_path("ballot"), config);
    FAIL() << "expected CompilerNotFound";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CompilerNotFound);
    EXPECT_NE(std::string(e.what()).find("SIF_SOLC"), std::string::npos);
  }
}

TEST(Compiler, NonPositiveTimeoutIsRejected) {
  CompilerConfig config;
  config.timeout_seconds = 0;
  EXPECT_EQ(code_of([&] { compile_source(test::sol_path("ballot"), config); }),
            ErrorCode::InvalidRequest);
}

TEST(Compiler, FixtureSourcesCompileToAcceptedAst) {
  if (!test::have_compiler()) GTEST_SKIP() << "no compiler (set SIF_SOLC)";
  for (const std::string stem : {"ballot", "item", "assembly"}) {
    SourceUnit unit = load_source_file(test::sol_path(stem));
    EXPECT_TRUE(validate(unit).empty()) << stem;
    EXPECT_TRUE(structurally_equal(unit, test::load_fixture(stem))) << stem;
  }
}

TEST(Compiler, SyntaxErrorCarriesCompilerMessage) {
  if (!test::have_compiler()) GTEST_SKIP() << "no compiler (set SIF_SOLC)";
  auto path = std::filesystem::temp_directory_path() / "sif_broken.sol";
  std::ofstream(path) << "pragma solidity ^0.5.0;\ncontract C { function f( }\n";
  try {
    compile_source(path);
    FAIL() << "expected CompilerError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CompilerError);
    EXPECT_NE(std::string(e.what()).find("Error"), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace sif
