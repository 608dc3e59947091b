#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include "sif/ast.hpp"

namespace sif {

// Handle on the node being visited. Reads see the node as it was when the
// visit began; writes are staged and applied, in call order, after the
// visit hook returns and before the node's children are traversed. Only the
// current node's attributes and child list can be edited.
class Cursor {
 public:
  const AstNode& node() const { return *node_; }
  NodeKind kind() const { return node_->kind(); }
  std::size_t depth() const { return ancestors_.size(); }

  // Root first, parent last.
  std::span<const AstNode* const> ancestors() const { return ancestors_; }
  const AstNode* parent() const {
    return ancestors_.empty() ? nullptr : ancestors_.back();
  }
  const SourceUnit& unit() const { return *unit_; }

  // Validated against the kind's schema immediately.
  void set(std::string_view field, Value value);

  // Indices refer to the child list as left by earlier staged edits.
  void edit(Edit e);
  void add_child(AstNode n) { edit(AddChild{std::move(n)}); }
  void remove_child(std::size_t i) { edit(RemoveChild{i}); }
  void update_child(std::size_t i, AstNode n) { edit(UpdateChild{i, std::move(n)}); }
  void insert_before(std::size_t i, AstNode n) { edit(InsertBefore{i, std::move(n)}); }
  void insert_after(std::size_t i, AstNode n) { edit(InsertAfter{i, std::move(n)}); }

  // Children (including ones added by this visit) are not traversed.
  void skip_children() { skip_ = true; }

  // Ids for synthesized nodes; never collide with the unit.
  NodeId fresh_id() { return unit_->fresh_id(); }
  AstNode make(NodeKind kind) { return AstNode(fresh_id(), kind); }

 private:
  friend class Walker;
  Cursor(AstNode* node, SourceUnit* unit, std::vector<const AstNode*>& anc)
      : node_(node), unit_(unit), ancestors_(anc) {}

  AstNode* node_;
  SourceUnit* unit_;
  const std::vector<const AstNode*>& ancestors_;
  std::vector<std::pair<std::string, Value>> sets_;
  std::vector<Edit> edits_;
  bool skip_ = false;
};

struct Hooks {
  std::function<void(const SourceUnit&)> before;
  std::function<void(Cursor&)> visit;
  std::function<void(const SourceUnit&)> after;
};

struct TraversalOutcome {
  SourceUnit unit;
  std::size_t visited = 0;
  // Nodes reachable from the root when traversal began. Equals `visited`
  // unless a visit inserted children, which are traversed too.
  std::size_t initial_nodes = 0;
};

// Pre-order walk over a copy of `unit`. A throwing hook or a rejected edit
// aborts with HookFailure and leaves `unit` untouched; a result that fails
// validation raises ValidationFailure.
TraversalOutcome walk(const SourceUnit& unit, const Hooks& hooks);

template <typename State>
struct StatefulHooks {
  std::function<void(const SourceUnit&, State&)> before;
  std::function<void(Cursor&, State&)> visit;
  std::function<void(const SourceUnit&, State&)> after;
};

template <typename State>
struct StatefulOutcome {
  SourceUnit unit;
  State state;
  std::size_t visited = 0;
  std::size_t initial_nodes = 0;
};

template <typename State>
StatefulOutcome<State> walk(const SourceUnit& unit,
                            const StatefulHooks<State>& hooks,
                            State initial = State{}) {
  State state = std::move(initial);
  Hooks plain;
  if (hooks.before) {
    plain.before = [&](const SourceUnit& u) { hooks.before(u, state); };
  }
  if (hooks.visit) plain.visit = [&](Cursor& c) { hooks.visit(c, state); };
  if (hooks.after) {
    plain.after = [&](const SourceUnit& u) { hooks.after(u, state); };
  }
  TraversalOutcome out = walk(unit, plain);
  return {std::move(out.unit), std::move(state), out.visited,
          out.initial_nodes};
}

}  // namespace sif
