#include <algorithm>
#include <set>
#include <tuple>

#include "sif/analyses.hpp"
#include "sif/codegen.hpp"

namespace sif {
namespace {

// Blocks are numbered in creation order. A block is only created when a
// statement needs a home or a branch needs a target, so a jump (break,
// continue, or a return in semantic mode) leaves no current block and the
// next statement opens a fresh, predecessor-less one.
class Builder {
 public:
  explicit Builder(const CfgOptions& options) : options_(options) {}

  Cfg run(const AstNode& fn, const AstNode& body) {
    cfg_.function = function_display_name(fn);
    current_ = open();
    statements(body);
    if (options_.semantic_returns) {
      std::size_t exit = open();
      cfg_.blocks[exit].exit = true;
      cfg_.blocks[exit].preview = "exit";
      if (current_) link(*current_, exit);
      for (std::size_t from : returns_) link(from, exit);
    }
    finish();
    return std::move(cfg_);
  }

 private:
  struct Loop {
    std::vector<std::size_t> breaks;
    std::vector<std::size_t> continues;
  };

  std::size_t open() {
    std::size_t index = cfg_.blocks.size();
    cfg_.blocks.push_back({});
    cfg_.blocks.back().index = index;
    return index;
  }

  void link(std::size_t from, std::size_t to,
            EdgeLabel label = EdgeLabel::Unconditional) {
    edges_.insert({from, to, label});
  }

  // The block straight-line code goes into, opened on demand.
  std::size_t here() {
    if (!current_) current_ = open();
    return *current_;
  }

  void place(std::size_t block, const AstNode& stmt, std::string preview) {
    auto& b = cfg_.blocks[block];
    b.statements.push_back(stmt.id());
    while (!preview.empty() && preview.back() == '\n') preview.pop_back();
    if (!b.preview.empty()) b.preview += "\n";
    b.preview += preview;
  }

  void place(std::size_t block, const AstNode& stmt) {
    place(block, stmt, emit_node(stmt));
  }

  // Ends the current block and opens the condition block for `stmt`.
  std::size_t condition(const AstNode& stmt, std::string preview) {
    std::size_t cond = open();
    if (current_) link(*current_, cond);
    cfg_.blocks[cond].condition = true;
    place(cond, stmt, std::move(preview));
    current_ = cond;
    return cond;
  }

  void statements(const AstNode& node) {
    if (node.kind() == NodeKind::Block) {
      for (const auto& s : node.children()) statements(s);
      return;
    }
    switch (node.kind()) {
      case NodeKind::IfStatement: return if_statement(node);
      case NodeKind::WhileStatement: return while_statement(node);
      case NodeKind::DoWhileStatement: return do_while(node);
      case NodeKind::ForStatement: return for_statement(node);
      case NodeKind::Break:
      case NodeKind::Continue: {
        std::size_t from = here();
        place(from, node);
        if (!loops_.empty()) {
          auto& loop = loops_.back();
          (node.kind() == NodeKind::Break ? loop.breaks : loop.continues)
              .push_back(from);
          current_.reset();
        }
        return;
      }
      case NodeKind::Return:
      case NodeKind::Throw: {
        std::size_t from = here();
        place(from, node);
        // Paper-fidelity mode lets control fall through a return.
        if (options_.semantic_returns) {
          returns_.push_back(from);
          current_.reset();
        }
        return;
      }
      default:
        place(here(), node);
    }
  }

  void if_statement(const AstNode& node) {
    std::size_t cond =
        condition(node, "if (" + emit_node(node.child(0)) + ")");
    std::size_t then_head = open();
    link(cond, then_head, EdgeLabel::TrueBranch);
    current_ = then_head;
    statements(node.child(1));
    std::optional<std::size_t> then_tail = current_;

    std::optional<std::size_t> else_tail;
    bool has_else = node.child_count() == 3;
    if (has_else) {
      std::size_t else_head = open();
      link(cond, else_head, EdgeLabel::FalseBranch);
      current_ = else_head;
      statements(node.child(2));
      else_tail = current_;
    }

    std::size_t join = open();
    if (!has_else) link(cond, join, EdgeLabel::FalseBranch);
    if (then_tail) link(*then_tail, join);
    if (else_tail) link(*else_tail, join);
    current_ = join;
  }

  void while_statement(const AstNode& node) {
    std::size_t cond =
        condition(node, "while (" + emit_node(node.child(0)) + ")");
    loop_body(cond, node.child(1), nullptr);
  }

  void for_statement(const AstNode& node) {
    std::size_t i = 0;
    const AstNode* init = nullptr;
    const AstNode* test = nullptr;
    const AstNode* step = nullptr;
    if (node.get_bool("hasInitialization")) init = &node.child(i++);
    if (node.get_bool("hasCondition")) test = &node.child(i++);
    if (node.get_bool("hasLoopExpression")) step = &node.child(i++);
    const AstNode& body = node.child(i);

    if (init) place(here(), *init);
    std::size_t cond = condition(
        node, "for (; " + (test ? emit_node(*test) : std::string()) + "; )");
    loop_body(cond, body, step);
  }

  // Shared tail of while and for: the condition block already exists.
  void loop_body(std::size_t cond, const AstNode& body, const AstNode* step) {
    std::size_t head = open();
    link(cond, head, EdgeLabel::TrueBranch);
    current_ = head;
    loops_.push_back({});
    statements(body);
    if (step) {
      // The increment is the body tail's way back to the condition.
      std::string text = emit_node(*step);
      if (!text.empty() && text.back() == ';') text.pop_back();
      place(here(), *step, text);
    }
    if (current_) link(*current_, cond);
    Loop loop = std::move(loops_.back());
    loops_.pop_back();
    for (std::size_t from : loop.continues) link(from, cond);

    std::size_t after = open();
    link(cond, after, EdgeLabel::FalseBranch);
    for (std::size_t from : loop.breaks) link(from, after);
    current_ = after;
  }

  void do_while(const AstNode& node) {
    std::size_t head = open();
    if (current_) link(*current_, head);
    current_ = head;
    loops_.push_back({});
    statements(node.child(1));

    std::size_t cond = open();
    cfg_.blocks[cond].condition = true;
    place(cond, node, "do-while (" + emit_node(node.child(0)) + ")");
    if (current_) link(*current_, cond);
    Loop loop = std::move(loops_.back());
    loops_.pop_back();
    for (std::size_t from : loop.continues) link(from, cond);
    link(cond, head, EdgeLabel::TrueBranch);

    std::size_t after = open();
    link(cond, after, EdgeLabel::FalseBranch);
    for (std::size_t from : loop.breaks) link(from, after);
    current_ = after;
  }

  void finish() {
    std::vector<bool> reached(cfg_.blocks.size(), false);
    for (const auto& [from, to, label] : edges_) {
      cfg_.edges.push_back({from, to, label});
      reached[to] = true;
    }
    for (std::size_t i = 1; i < cfg_.blocks.size(); ++i) {
      cfg_.blocks[i].unreachable = !reached[i];
    }
  }

  const CfgOptions& options_;
  Cfg cfg_;
  std::optional<std::size_t> current_;
  std::vector<Loop> loops_;
  std::vector<std::size_t> returns_;
  // Ordered by (from, to, label): the edge sort order of the result.
  std::set<std::tuple<std::size_t, std::size_t, EdgeLabel>> edges_;
};

}  // namespace

std::string_view to_string(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::Unconditional: return "";
    case EdgeLabel::TrueBranch: return "True Branch";
    case EdgeLabel::FalseBranch: return "False Branch";
  }
  return "";
}

Cfg build_cfg(const AstNode& function, const CfgOptions& options) {
  if (function.kind() != NodeKind::FunctionDefinition &&
      function.kind() != NodeKind::ModifierDefinition) {
    throw Error(ErrorCode::InvalidRequest,
                "build_cfg expects a function, got " +
                    std::string(to_string(function.kind())));
  }
  if (function.child_count() == 0 ||
      function.child(function.child_count() - 1).kind() != NodeKind::Block) {
    throw Error(ErrorCode::MissingBody,
                "function '" + function_display_name(function) +
                    "' has no body");
  }
  return Builder(options).run(function,
                              function.child(function.child_count() - 1));
}

const AstNode* find_function(const SourceUnit& unit, std::string_view name,
                             std::string_view contract) {
  for (const auto& top : unit.root().children()) {
    if (top.kind() != NodeKind::ContractDefinition) continue;
    if (!contract.empty() && top.get_string("name") != contract) continue;
    for (const auto& member : top.children()) {
      if (member.kind() == NodeKind::FunctionDefinition &&
          function_display_name(member) == name) {
        return &member;
      }
    }
  }
  return nullptr;
}

}  // namespace sif
