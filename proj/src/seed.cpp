#include <set>

#include "sif/analyses.hpp"
#include "sif/transforms.hpp"
#include "sif/traverse.hpp"
#include "synth.hpp"

namespace sif {
namespace {

struct Recipe {
  const char* type;
  const char* names[3];
  const char* values[2];
  const char* op;
};

// Per vulnerability: one arithmetic statement that must misbehave.
Recipe recipe_for(Vulnerability v) {
  switch (v) {
    case Vulnerability::DivisionByZero:
      return {"uint256", {"dividend", "divisor", "quotient"}, {"20", "0"}, "/"};
    case Vulnerability::UnsignedOverflow:
      return {"uint8", {"augend", "addend", "sum"}, {"255", "1"}, "+"};
    case Vulnerability::UnsignedUnderflow:
      return {"uint256", {"minuend", "subtrahend", "result"}, {"20", "250"}, "-"};
    case Vulnerability::SignedOverflowUnderflow:
      return {"int8", {"augend", "addend", "sum"}, {"127", "1"}, "+"};
  }
  throw Error(ErrorCode::InvalidRequest, "unknown vulnerability");
}

bool has_body(const AstNode& fn) {
  return fn.child_count() > 0 &&
         fn.child(fn.child_count() - 1).kind() == NodeKind::Block;
}

const AstNode* pick_target(const SourceUnit& unit,
                           const std::optional<std::string>& target) {
  const AstNode* named = nullptr;
  for (const auto& top : unit.root().children()) {
    if (top.kind() != NodeKind::ContractDefinition) continue;
    for (const auto& member : top.children()) {
      if (member.kind() != NodeKind::FunctionDefinition) continue;
      if (!target) {
        if (has_body(member)) return &member;
        continue;
      }
      if (function_display_name(member) != *target) continue;
      if (has_body(member)) return &member;
      named = &member;
    }
  }
  if (!target) {
    throw Error(ErrorCode::NoInjectableFunction,
                "no function with a body to inject into");
  }
  if (named) {
    throw Error(ErrorCode::NoInjectableFunction,
                "function '" + *target + "' has no body");
  }
  throw Error(ErrorCode::UnknownTarget, "no function named '" + *target + "'");
}

}  // namespace

std::string_view to_string(Vulnerability v) {
  switch (v) {
    case Vulnerability::DivisionByZero: return "division-by-zero";
    case Vulnerability::UnsignedOverflow: return "unsigned-overflow";
    case Vulnerability::UnsignedUnderflow: return "unsigned-underflow";
    case Vulnerability::SignedOverflowUnderflow: return "signed-overflow-underflow";
  }
  return "";
}

std::optional<Vulnerability> parse_vulnerability(std::string_view text) {
  for (Vulnerability v : kAllVulnerabilities) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

SeedResult seed_fault(const SourceUnit& unit, Vulnerability vuln,
                      std::optional<std::string> target) {
  const AstNode* fn = pick_target(unit, target);
  const NodeId body_id = fn->child(fn->child_count() - 1).id();
  const Recipe recipe = recipe_for(vuln);

  // Locals already in the function keep their names; ours get a suffix.
  std::set<std::string> taken;
  fn->for_each([&](const AstNode& n) {
    if (is_variable_like(n.kind())) taken.insert(n.get_string("name"));
  });
  std::string suffix;
  for (int k = 1;; ++k) {
    bool clash = false;
    for (const char* name : recipe.names) clash |= taken.count(name + suffix) > 0;
    if (!clash) break;
    suffix = "_" + std::to_string(k);
  }

  SeedResult result;
  Hooks hooks;
  hooks.visit = [&](Cursor& c) {
    if (c.node().id() != body_id) return;
    synth::Builder b([&] { return c.fresh_id(); });
    const std::string t = recipe.type;
    const std::string lhs = recipe.names[0] + suffix;
    const std::string rhs = recipe.names[1] + suffix;
    const std::string out = recipe.names[2] + suffix;
    std::vector<AstNode> block;
    block.push_back(b.declare(t, lhs, b.number(recipe.values[0])));
    block.push_back(b.declare(t, rhs, b.number(recipe.values[1])));
    block.push_back(b.declare(
        t, out,
        b.binary(recipe.op, b.identifier(lhs, t), b.identifier(rhs, t))));
    // The operands of the last statement bind to the first two.
    AstNode& op = block[2].child(1);
    op.child(0).set("referencedDeclaration", block[0].child(0).id());
    op.child(1).set("referencedDeclaration", block[1].child(0).id());
    op.set("typeString", t);

    ReportEntry entry;
    entry.site = fn->id();
    entry.span = fn->span();
    entry.action = Action::SeededFault;
    entry.reason = std::string(to_string(vuln)) + " in '" +
                   function_display_name(*fn) + "'";
    if (!suffix.empty()) entry.reason += "; names suffixed '" + suffix + "'";
    for (std::size_t i = 0; i < block.size(); ++i) {
      block[i].set("instrumentation", std::string(kFaultMarker));
      if (i) entry.text += "\n";
      entry.text += synth::text_of(block[i]);
      entry.inserted.push_back(block[i].id());
      result.injected_nodes += block[i].subtree_size();
    }
    bool empty = c.node().child_count() == 0;
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (empty) {
        c.add_child(std::move(block[i]));
      } else {
        c.insert_before(i, std::move(block[i]));
      }
    }
    result.report.entries.push_back(std::move(entry));
    c.skip_children();
  };
  result.unit = walk(unit, hooks).unit;
  return result;
}

}  // namespace sif
