#include "sif/traverse.hpp"

#include "sif/ingest.hpp"

namespace sif {

void Cursor::set(std::string_view field, Value value) {
  AstNode probe(0, node_->kind());
  probe.set(field, value);
  sets_.emplace_back(std::string(field), std::move(value));
}

void Cursor::edit(Edit e) { edits_.push_back(std::move(e)); }

class Walker {
 public:
  Walker(SourceUnit& unit, const Hooks& hooks)
      : unit_(unit), hooks_(hooks), ids_(collect_ids(unit.root())) {}

  std::size_t run() {
    visit(unit_.root());
    return visited_;
  }

 private:
  void visit(AstNode& node) {
    ++visited_;
    bool skip = false;
    if (hooks_.visit) {
      Cursor cursor(&node, &unit_, ancestors_);
      try {
        hooks_.visit(cursor);
      } catch (const std::exception& e) {
        throw Error(ErrorCode::HookFailure, failure(node, e.what()));
      }
      try {
        for (auto& [field, value] : cursor.sets_) node.set(field, std::move(value));
        for (auto& edit : cursor.edits_) {
          NodeId top = std::visit(
              [](const auto& e) -> NodeId {
                if constexpr (requires { e.node; }) {
                  return e.node.max_id();
                } else {
                  return 0;
                }
              },
              edit);
          apply_edit(node, std::move(edit), &ids_);
          unit_.reserve_ids_above(top);
        }
      } catch (const Error& e) {
        throw Error(ErrorCode::HookFailure, failure(node, e.what()));
      }
      skip = cursor.skip_;
    }
    if (skip) return;
    ancestors_.push_back(&node);
    for (std::size_t i = 0; i < node.child_count(); ++i) visit(node.child(i));
    ancestors_.pop_back();
  }

  static std::string failure(const AstNode& node, std::string_view what) {
    return "visit of " + std::string(to_string(node.kind())) + " (id " +
           std::to_string(node.id()) + ") failed: " + std::string(what);
  }

  SourceUnit& unit_;
  const Hooks& hooks_;
  std::unordered_set<NodeId> ids_;
  std::vector<const AstNode*> ancestors_;
  std::size_t visited_ = 0;
};

TraversalOutcome walk(const SourceUnit& unit, const Hooks& hooks) {
  SourceUnit work = unit;
  TraversalOutcome out{SourceUnit(), 0, unit.node_count()};
  if (hooks.before) {
    try {
      hooks.before(work);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::HookFailure,
                  std::string("before hook failed: ") + e.what());
    }
  }
  out.visited = Walker(work, hooks).run();
  for (const auto& d : validate(work)) {
    if (d.severity == Diagnostic::Severity::Error) {
      throw Error(ErrorCode::ValidationFailure,
                  "traversal produced an invalid unit: " + d.message);
    }
  }
  if (hooks.after) {
    try {
      hooks.after(work);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::HookFailure,
                  std::string("after hook failed: ") + e.what());
    }
  }
  out.unit = std::move(work);
  return out;
}

}  // namespace sif
