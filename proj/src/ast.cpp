#include "sif/ast.hpp"

#include <algorithm>
#include <cctype>

namespace sif {
namespace {

const Value kUnset{};

const FieldSpec& require_field(NodeKind kind, std::string_view field) {
  const FieldSpec* spec = schema_for(kind).field(field);
  if (!spec) {
    throw Error(ErrorCode::UnknownField, std::string(to_string(kind)) +
                                             " has no field '" +
                                             std::string(field) + "'");
  }
  return *spec;
}

bool value_fits(const Value& value, FieldType type) {
  switch (type) {
    case FieldType::Bool: return std::holds_alternative<bool>(value);
    case FieldType::Int:
    case FieldType::Ref: return std::holds_alternative<std::int64_t>(value);
    case FieldType::String: return std::holds_alternative<std::string>(value);
    case FieldType::StringList:
      return std::holds_alternative<std::vector<std::string>>(value);
  }
  return false;
}

std::string_view type_name(FieldType type) {
  switch (type) {
    case FieldType::Bool: return "bool";
    case FieldType::Int: return "integer";
    case FieldType::String: return "string";
    case FieldType::StringList: return "string list";
    case FieldType::Ref: return "node reference";
  }
  return "?";
}

void check_index(const AstNode& node, std::size_t index, std::size_t bound) {
  if (index >= bound) {
    throw Error(ErrorCode::IndexOutOfRange,
                "child index " + std::to_string(index) + " out of range for " +
                    std::string(to_string(node.kind())) + " with " +
                    std::to_string(node.child_count()) + " children");
  }
}

void claim_ids(const AstNode& subtree, std::unordered_set<NodeId>& ids) {
  std::vector<NodeId> added;
  bool clash = false;
  NodeId clash_id = 0;
  subtree.for_each([&](const AstNode& n) {
    if (clash) return;
    if (!ids.insert(n.id()).second) {
      clash = true;
      clash_id = n.id();
      return;
    }
    added.push_back(n.id());
  });
  if (clash) {
    for (NodeId id : added) ids.erase(id);
    throw Error(ErrorCode::IdCollision,
                "inserted subtree reuses node id " + std::to_string(clash_id));
  }
}

void release_ids(const AstNode& subtree, std::unordered_set<NodeId>& ids) {
  subtree.for_each([&](const AstNode& n) { ids.erase(n.id()); });
}

bool is_operator_token(std::string_view token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), [](char c) {
           return std::string_view("^~<>=|-").find(c) != std::string_view::npos;
         });
}

}  // namespace

std::string to_string(const Span& span) {
  return std::to_string(span.offset) + ":" + std::to_string(span.length) +
         ":" + std::to_string(span.file);
}

std::string to_string(const Value& value) {
  struct Printer {
    std::string operator()(std::monostate) const { return "<unset>"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(const std::string& s) const { return '"' + s + '"'; }
    std::string operator()(const std::vector<std::string>& list) const {
      std::string out = "[";
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ", ";
        out += '"' + list[i] + '"';
      }
      return out + "]";
    }
  };
  return std::visit(Printer{}, value);
}

const Value& AstNode::get(std::string_view field) const {
  require_field(kind_, field);
  auto it = attributes_.find(field);
  return it == attributes_.end() ? kUnset : it->second;
}

bool AstNode::has(std::string_view field) const {
  return !std::holds_alternative<std::monostate>(get(field));
}

void AstNode::set(std::string_view field, Value value) {
  const FieldSpec& spec = require_field(kind_, field);
  if (std::holds_alternative<std::monostate>(value)) {
    if (auto it = attributes_.find(field); it != attributes_.end()) {
      attributes_.erase(it);
    }
    return;
  }
  if (!value_fits(value, spec.type)) {
    throw Error(ErrorCode::TypeMismatch,
                std::string(to_string(kind_)) + "." + std::string(field) +
                    " expects a " + std::string(type_name(spec.type)) +
                    ", got " + to_string(value));
  }
  attributes_.insert_or_assign(std::string(field), std::move(value));
}

std::string AstNode::get_string(std::string_view field,
                                std::string_view fallback) const {
  const Value& v = get(field);
  if (auto* s = std::get_if<std::string>(&v)) return *s;
  return std::string(fallback);
}

bool AstNode::get_bool(std::string_view field, bool fallback) const {
  const Value& v = get(field);
  if (auto* b = std::get_if<bool>(&v)) return *b;
  return fallback;
}

std::optional<std::int64_t> AstNode::get_int(std::string_view field) const {
  const Value& v = get(field);
  if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::nullopt;
}

std::vector<std::string> AstNode::get_strings(std::string_view field) const {
  const Value& v = get(field);
  if (auto* list = std::get_if<std::vector<std::string>>(&v)) return *list;
  return {};
}

const AstNode& AstNode::child(std::size_t index) const {
  check_index(*this, index, children_.size());
  return children_[index];
}

AstNode& AstNode::child(std::size_t index) {
  check_index(*this, index, children_.size());
  return children_[index];
}

void AstNode::add_child(AstNode node) { children_.push_back(std::move(node)); }

void AstNode::remove_child(std::size_t index) {
  check_index(*this, index, children_.size());
  children_.erase(children_.begin() + static_cast<std::ptrdiff_t>(index));
}

void AstNode::update_child(std::size_t index, AstNode node) {
  check_index(*this, index, children_.size());
  children_[index] = std::move(node);
}

void AstNode::insert_before(std::size_t index, AstNode node) {
  // index == size is rejected: "before" needs an existing anchor.
  check_index(*this, index, children_.size());
  children_.insert(children_.begin() + static_cast<std::ptrdiff_t>(index),
                   std::move(node));
}

void AstNode::insert_after(std::size_t index, AstNode node) {
  check_index(*this, index, children_.size());
  children_.insert(children_.begin() + static_cast<std::ptrdiff_t>(index) + 1,
                   std::move(node));
}

void AstNode::for_each(const std::function<void(const AstNode&)>& fn) const {
  fn(*this);
  for (const auto& c : children_) c.for_each(fn);
}

void AstNode::for_each_mut(const std::function<void(AstNode&)>& fn) {
  fn(*this);
  for (auto& c : children_) c.for_each_mut(fn);
}

std::size_t AstNode::subtree_size() const {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.subtree_size();
  return n;
}

NodeId AstNode::max_id() const {
  NodeId m = id_;
  for (const auto& c : children_) m = std::max(m, c.max_id());
  return m;
}

Value effective_value(const AstNode& node, const FieldSpec& spec) {
  const Value& v = node.get(spec.name);
  if (!std::holds_alternative<std::monostate>(v)) return v;
  switch (spec.type) {
    case FieldType::Bool: return false;
    case FieldType::String: return std::string();
    case FieldType::StringList: return std::vector<std::string>();
    default: return v;
  }
}

bool structurally_equal(const AstNode& a, const AstNode& b) {
  if (a.kind() != b.kind() || a.child_count() != b.child_count()) return false;
  for (const auto& spec : schema_for(a.kind()).fields) {
    if (spec.role != FieldRole::Syntax) continue;
    if (effective_value(a, spec) != effective_value(b, spec)) return false;
  }
  auto ca = a.children();
  auto cb = b.children();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!structurally_equal(ca[i], cb[i])) return false;
  }
  return true;
}

std::unordered_set<NodeId> collect_ids(const AstNode& root) {
  std::unordered_set<NodeId> ids;
  root.for_each([&](const AstNode& n) { ids.insert(n.id()); });
  return ids;
}

void apply_edit(AstNode& target, Edit edit, std::unordered_set<NodeId>* ids) {
  std::visit(
      [&](auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, RemoveChild>) {
          check_index(target, e.index, target.child_count());
          if (ids) release_ids(target.child(e.index), *ids);
          target.remove_child(e.index);
        } else if constexpr (std::is_same_v<E, UpdateChild>) {
          check_index(target, e.index, target.child_count());
          if (ids) {
            release_ids(target.child(e.index), *ids);
            try {
              claim_ids(e.node, *ids);
            } catch (...) {
              target.child(e.index).for_each(
                  [&](const AstNode& n) { ids->insert(n.id()); });
              throw;
            }
          }
          target.update_child(e.index, std::move(e.node));
        } else {
          if constexpr (!std::is_same_v<E, AddChild>) {
            check_index(target, e.index, target.child_count());
          }
          if (ids) claim_ids(e.node, *ids);
          if constexpr (std::is_same_v<E, AddChild>) {
            target.add_child(std::move(e.node));
          } else if constexpr (std::is_same_v<E, InsertBefore>) {
            target.insert_before(e.index, std::move(e.node));
          } else {
            target.insert_after(e.index, std::move(e.node));
          }
        }
      },
      edit);
}

SourceUnit::SourceUnit() : root_(0, NodeKind::SourceUnit), origin_("synthetic") {}

SourceUnit::SourceUnit(AstNode root, std::string origin)
    : root_(std::move(root)), origin_(std::move(origin)) {
  if (root_.kind() != NodeKind::SourceUnit) {
    throw Error(ErrorCode::InvalidRequest,
                "source unit root must be a SourceUnit, got " +
                    std::string(to_string(root_.kind())));
  }
  next_id_ = root_.max_id() + 1;
}

std::optional<std::string> SourceUnit::solidity_version() const {
  for (const auto& child : root_.children()) {
    if (child.kind() != NodeKind::PragmaDirective) continue;
    auto literals = child.get_strings("literals");
    if (!literals.empty() && literals.front() == "solidity") {
      return join_pragma_literals(
          std::span<const std::string>(literals).subspan(1));
    }
  }
  return std::nullopt;
}

NodeId SourceUnit::fresh_id() { return next_id_++; }

void SourceUnit::reserve_ids_above(NodeId id) {
  next_id_ = std::max(next_id_, id + 1);
}

const AstNode* SourceUnit::find(NodeId id) const {
  const AstNode* found = nullptr;
  root_.for_each([&](const AstNode& n) {
    if (!found && n.id() == id) found = &n;
  });
  return found;
}

AstNode* SourceUnit::find(NodeId id) {
  return const_cast<AstNode*>(std::as_const(*this).find(id));
}

void SourceUnit::apply(NodeId target, Edit edit) {
  AstNode* node = find(target);
  if (!node) {
    throw Error(ErrorCode::NotFound,
                "no node with id " + std::to_string(target));
  }
  auto ids = collect_ids(root_);
  NodeId top = std::visit(
      [](const auto& e) -> NodeId {
        if constexpr (requires { e.node; }) {
          return e.node.max_id();
        } else {
          return 0;
        }
      },
      edit);
  apply_edit(*node, std::move(edit), &ids);
  reserve_ids_above(top);
}

bool structurally_equal(const SourceUnit& a, const SourceUnit& b) {
  return structurally_equal(a.root(), b.root());
}

AstNode clone_with_fresh_ids(const AstNode& node, SourceUnit& unit) {
  AstNode copy = node;
  copy.for_each_mut([&](AstNode& n) { n.set_id(unit.fresh_id()); });
  return copy;
}

ParentIndex::ParentIndex(const AstNode& root) {
  std::function<void(const AstNode&)> index = [&](const AstNode& n) {
    ids_.emplace(n.id(), &n);
    for (const auto& c : n.children()) {
      parents_.emplace(&c, &n);
      index(c);
    }
  };
  index(root);
}

const AstNode* ParentIndex::parent(const AstNode& node) const {
  auto it = parents_.find(&node);
  return it == parents_.end() ? nullptr : it->second;
}

const AstNode* ParentIndex::nearest(const AstNode& node, NodeKind kind) const {
  for (const AstNode* p = parent(node); p; p = parent(*p)) {
    if (p->kind() == kind) return p;
  }
  return nullptr;
}

const AstNode* ParentIndex::by_id(NodeId id) const {
  auto it = ids_.find(id);
  return it == ids_.end() ? nullptr : it->second;
}

std::string join_pragma_literals(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) {
      bool op = is_operator_token(tokens[i]) ||
                (!tokens[i].empty() && std::string_view("^~<>=|").find(
                                           tokens[i][0]) != std::string::npos);
      bool prev_op = is_operator_token(tokens[i - 1]);
      if ((op && !prev_op) || tokens[i - 1] == "||") out += ' ';
    }
    out += tokens[i];
  }
  return out;
}

std::string_view signedness_of(std::string_view type) {
  auto width_ok = [](std::string_view rest) {
    return std::all_of(rest.begin(), rest.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  if (type.substr(0, 4) == "uint" && width_ok(type.substr(4))) {
    return "unsigned";
  }
  if (type.substr(0, 3) == "int" && width_ok(type.substr(3))) return "signed";
  return "unknown";
}

}  // namespace sif
