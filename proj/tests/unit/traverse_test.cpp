#include <gtest/gtest.h>

#include <unordered_map>

#include "sif/codegen.hpp"
#include "sif/traverse.hpp"
#include "support.hpp"

namespace sif {
namespace {

TEST(Walk, IdentityOnEveryFixture) {
  for (const auto& stem : test::corpus_stems()) {
    SourceUnit unit = test::load_fixture(stem);
    TraversalOutcome out = walk(unit, Hooks{});
    EXPECT_TRUE(structurally_equal(out.unit, unit)) << stem;
    EXPECT_EQ(emit_source(out.unit), emit_source(unit)) << stem;
    EXPECT_EQ(out.visited, unit.node_count()) << stem;
    EXPECT_EQ(out.initial_nodes, unit.node_count()) << stem;
  }
}

TEST(Walk, PreOrderLaw) {
  for (const auto& stem : test::corpus_stems()) {
    SourceUnit unit = test::load_fixture(stem);
    std::vector<NodeId> order;
    Hooks hooks;
    hooks.visit = [&](Cursor& c) { order.push_back(c.node().id()); };
    walk(unit, hooks);

    // Independent pre-order from the tree itself.
    std::vector<NodeId> expected;
    std::function<void(const AstNode&)> rec = [&](const AstNode& n) {
      expected.push_back(n.id());
      for (const auto& c : n.children()) rec(c);
    };
    rec(unit.root());
    EXPECT_EQ(order, expected) << stem;
  }
}

TEST(Walk, AncestorsArePath) {
  SourceUnit unit = test::load_fixture("ballot");
  ParentIndex parents(unit.root());
  Hooks hooks;
  hooks.visit = [&](Cursor& c) {
    const AstNode* up = parents.parent(*parents.by_id(c.node().id()));
    if (!up) {
      EXPECT_EQ(c.parent(), nullptr);
      return;
    }
    ASSERT_NE(c.parent(), nullptr);
    EXPECT_EQ(c.parent()->id(), up->id());
  };
  walk(unit, hooks);
}

TEST(Walk, BeforeFirstAfterLast) {
  SourceUnit unit = test::load_fixture("ownable");
  std::vector<std::string> log;
  Hooks hooks;
  hooks.before = [&](const SourceUnit&) { log.push_back("before"); };
  hooks.visit = [&](Cursor&) {
    if (log.back() != "visit") log.push_back("visit");
  };
  hooks.after = [&](const SourceUnit&) { log.push_back("after"); };
  walk(unit, hooks);
  EXPECT_EQ(log, (std::vector<std::string>{"before", "visit", "after"}));
}

TEST(Walk, CountsFunctionsOfAztraToken) {
  StatefulHooks<int> hooks;
  hooks.visit = [](Cursor& c, int& n) { n += c.kind() == NodeKind::FunctionDefinition; };
  auto out = walk(test::load_fixture("aztratoken"), hooks);
  EXPECT_EQ(out.state, 10);
}

TEST(Walk, RenameStructViaVisit) {
  Hooks hooks;
  hooks.visit = [](Cursor& c) {
    if (c.kind() == NodeKind::StructDefinition && c.node().get_string("name") == "Request") {
      c.set("name", std::string("DirectRequest"));
    }
  };
  auto out = walk(test::load_fixture("struct_request"), hooks);
  EXPECT_NE(emit_source(out.unit).find("struct DirectRequest"), std::string::npos);
}

TEST(Walk, HookFailureLeavesInputUntouched) {
  SourceUnit unit = test::load_fixture("auction");
  SourceUnit before = unit;
  std::size_t calls = 0;
  Hooks hooks;
  hooks.visit = [&](Cursor& c) {
    if (c.kind() == NodeKind::Identifier) c.set("name", std::string("zz"));
    if (++calls == 40) throw std::runtime_error("stop here");
  };
  try {
    walk(unit, hooks);
    FAIL() << "expected HookFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HookFailure);
    EXPECT_NE(std::string(e.what()).find("stop here"), std::string::npos);
  }
  EXPECT_TRUE(structurally_equal(unit, before));
  EXPECT_EQ(emit_source(unit), emit_source(before));
}

TEST(Walk, RejectedEditAborts) {
  SourceUnit unit = test::load_fixture("ownable");
  Hooks hooks;
  hooks.visit = [](Cursor& c) {
    if (c.kind() == NodeKind::ContractDefinition) c.remove_child(1000);
  };
  try {
    walk(unit, hooks);
    FAIL() << "expected HookFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HookFailure);
  }
}

TEST(Walk, InvalidResultIsValidationFailure) {
  Hooks hooks;
  hooks.visit = [](Cursor& c) {
    // A BinaryOperation with one operand violates its arity.
    if (c.kind() == NodeKind::BinaryOperation) c.remove_child(1);
  };
  try {
    walk(test::load_fixture("operators"), hooks);
    FAIL() << "expected ValidationFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationFailure);
  }
}

TEST(Walk, EditsApplyBeforeChildren) {
  SourceUnit unit = test::load_fixture("cfg_shapes");
  std::size_t checked = 0;
  Hooks hooks;
  hooks.visit = [&](Cursor& c) {
    if (c.kind() == NodeKind::FunctionDefinition) {
      c.set("name", c.node().get_string("name") + "_v2");
      // Reads still see the node as it was when the visit began.
      EXPECT_EQ(c.node().get_string("name").find("_v2"), std::string::npos);
    }
    if (c.parent() && c.parent()->kind() == NodeKind::FunctionDefinition) {
      EXPECT_NE(c.parent()->get_string("name").find("_v2"), std::string::npos);
      ++checked;
    }
  };
  auto out = walk(unit, hooks);
  EXPECT_GT(checked, 0u);
  EXPECT_NE(emit_source(out.unit).find("function diamond_v2("), std::string::npos);
}

TEST(Walk, InsertedChildrenAreTraversed) {
  SourceUnit unit = test::load_fixture("cfg_shapes");
  std::unordered_map<NodeId, int> visits;
  std::vector<NodeId> inserted;
  Hooks hooks;
  hooks.visit = [&](Cursor& c) {
    ++visits[c.node().id()];
    if (c.kind() == NodeKind::Block && c.parent() &&
        c.parent()->kind() == NodeKind::FunctionDefinition) {
      AstNode stmt = c.make(NodeKind::ExpressionStatement);
      AstNode id = c.make(NodeKind::Identifier);
      id.set("name", std::string("a"));
      stmt.add_child(std::move(id));
      inserted.push_back(stmt.id());
      c.add_child(std::move(stmt));
    }
  };
  auto out = walk(unit, hooks);
  ASSERT_FALSE(inserted.empty());
  for (NodeId id : inserted) EXPECT_EQ(visits[id], 1);
  EXPECT_EQ(out.initial_nodes, unit.node_count());
  EXPECT_EQ(out.visited, unit.node_count() + 2 * inserted.size());
  EXPECT_EQ(out.unit.node_count(), out.visited);
  for (const auto& [id, n] : visits) EXPECT_EQ(n, 1) << id;
}

TEST(Walk, SkipChildren) {
  SourceUnit unit = test::load_fixture("two_contracts");
  std::size_t visited_functions = 0;
  Hooks hooks;
  hooks.visit = [&](Cursor& c) {
    if (c.kind() == NodeKind::ContractDefinition) c.skip_children();
    visited_functions += c.kind() == NodeKind::FunctionDefinition;
  };
  auto out = walk(unit, hooks);
  EXPECT_EQ(visited_functions, 0u);
  EXPECT_LT(out.visited, unit.node_count());
}

TEST(Walk, FreshIdsFromCursorAreUnique) {
  SourceUnit unit = test::load_fixture("wallet");
  auto ids = collect_ids(unit.root());
  Hooks hooks;
  hooks.visit = [&](Cursor& c) {
    NodeId id = c.fresh_id();
    EXPECT_TRUE(ids.insert(id).second) << id;
  };
  walk(unit, hooks);
}

}  // namespace
}  // namespace sif
