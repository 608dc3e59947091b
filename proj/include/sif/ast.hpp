#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "sif/error.hpp"
#include "sif/node_kind.hpp"

namespace sif {

using NodeId = std::int64_t;

// Byte range in a compiler input file ("offset:length:file" in the compact
// AST). Absent on nodes synthesized by transforms.
struct Span {
  std::int64_t offset = 0;
  std::int64_t length = 0;
  std::int64_t file = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

std::string to_string(const Span& span);

// Attribute value. monostate means "not set".
using Value = std::variant<std::monostate, bool, std::int64_t, std::string,
                           std::vector<std::string>>;

std::string to_string(const Value& value);

enum class FieldType { Bool, Int, String, StringList, Ref };

// Syntax fields take part in structural equality and diffing. Semantic
// fields are compiler annotations (types, resolved references) and Marker
// fields are toolkit bookkeeping; neither survives a trip through source
// text in a comparable form, so both are excluded.
enum class FieldRole { Syntax, Semantic, Marker };

struct FieldSpec {
  std::string_view name;
  FieldType type;
  FieldRole role = FieldRole::Syntax;
};

struct KindSchema {
  NodeKind kind;
  std::span<const FieldSpec> fields;
  std::size_t min_children;
  std::size_t max_children;  // SIZE_MAX for unbounded
  std::string_view layout;   // human readable child layout

  const FieldSpec* field(std::string_view name) const;
};

const KindSchema& schema_for(NodeKind kind);

// Returns a message for the first arity/layout violation of `children`
// under a node of `kind` with the given attributes, or nullopt.
class AstNode;
std::optional<std::string> check_layout(const AstNode& node);

class AstNode {
 public:
  AstNode(NodeId id, NodeKind kind) : id_(id), kind_(kind) {}

  NodeId id() const { return id_; }
  void set_id(NodeId id) { id_ = id; }
  NodeKind kind() const { return kind_; }

  const std::optional<Span>& span() const { return span_; }
  void set_span(std::optional<Span> span) { span_ = span; }

  // Field access is checked against the kind's schema: an unknown field is
  // an UnknownField error, a value of the wrong type a TypeMismatch.
  const Value& get(std::string_view field) const;
  bool has(std::string_view field) const;
  void set(std::string_view field, Value value);
  void clear(std::string_view field) { set(field, std::monostate{}); }

  // Typed conveniences; return the fallback when the field is unset.
  std::string get_string(std::string_view field,
                         std::string_view fallback = {}) const;
  bool get_bool(std::string_view field, bool fallback = false) const;
  std::optional<std::int64_t> get_int(std::string_view field) const;
  std::vector<std::string> get_strings(std::string_view field) const;

  const std::map<std::string, Value, std::less<>>& attributes() const {
    return attributes_;
  }

  std::span<const AstNode> children() const { return children_; }
  std::span<AstNode> children() { return children_; }
  std::size_t child_count() const { return children_.size(); }
  const AstNode& child(std::size_t index) const;
  AstNode& child(std::size_t index);

  // Unchecked-for-identity structural edits. Index errors throw
  // IndexOutOfRange. SourceUnit::apply adds the id-collision check.
  void add_child(AstNode node);
  void remove_child(std::size_t index);
  void update_child(std::size_t index, AstNode node);
  void insert_before(std::size_t index, AstNode node);
  void insert_after(std::size_t index, AstNode node);

  // Pre-order visit of this subtree.
  void for_each(const std::function<void(const AstNode&)>& fn) const;
  void for_each_mut(const std::function<void(AstNode&)>& fn);
  std::size_t subtree_size() const;
  NodeId max_id() const;

 private:
  NodeId id_;
  NodeKind kind_;
  std::optional<Span> span_;
  std::map<std::string, Value, std::less<>> attributes_;
  std::vector<AstNode> children_;
};

// Value used for comparison: an unset Bool, String or StringList field reads
// as false, "" or {} so that synthesized nodes need not spell out defaults.
Value effective_value(const AstNode& node, const FieldSpec& spec);

// kinds, syntax attributes and child sequences match recursively; ids,
// spans and non-syntax fields are ignored.
bool structurally_equal(const AstNode& a, const AstNode& b);

struct AddChild {
  AstNode node;
};
struct RemoveChild {
  std::size_t index;
};
struct UpdateChild {
  std::size_t index;
  AstNode node;
};
struct InsertBefore {
  std::size_t index;
  AstNode node;
};
struct InsertAfter {
  std::size_t index;
  AstNode node;
};
using Edit =
    std::variant<AddChild, RemoveChild, UpdateChild, InsertBefore, InsertAfter>;

// Applies one edit to `target`. When `ids` is given it holds every id in the
// host unit: inserted subtrees must be disjoint from it (IdCollision
// otherwise) and it is kept current across the edit.
void apply_edit(AstNode& target, Edit edit,
                std::unordered_set<NodeId>* ids = nullptr);

std::unordered_set<NodeId> collect_ids(const AstNode& root);

class SourceUnit {
 public:
  SourceUnit();
  explicit SourceUnit(AstNode root, std::string origin = "synthetic");

  const AstNode& root() const { return root_; }
  AstNode& root() { return root_; }

  const std::string& origin() const { return origin_; }
  void set_origin(std::string origin) { origin_ = std::move(origin); }

  // Version constraint of the first solidity pragma, e.g. "^0.4.24".
  std::optional<std::string> solidity_version() const;

  // Fresh ids start above every id ever seen in this unit.
  NodeId fresh_id();
  NodeId peek_next_id() const { return next_id_; }
  void reserve_ids_above(NodeId id);

  const AstNode* find(NodeId id) const;
  AstNode* find(NodeId id);

  // Structural edit on the node with id `target`; rejects inserted subtrees
  // whose ids already appear in the unit.
  void apply(NodeId target, Edit edit);

  std::size_t node_count() const { return root_.subtree_size(); }

  // Ingestion remarks that are not validity problems, e.g. compiler fields
  // the toolkit does not model.
  const std::vector<std::string>& notes() const { return notes_; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

 private:
  AstNode root_;
  std::string origin_;
  std::vector<std::string> notes_;
  NodeId next_id_ = 1;
};

bool structurally_equal(const SourceUnit& a, const SourceUnit& b);

// Copies `node` giving every node in the copy a fresh id from `unit`.
AstNode clone_with_fresh_ids(const AstNode& node, SourceUnit& unit);

// Parent links for ad-hoc upward queries over an immutable tree.
class ParentIndex {
 public:
  explicit ParentIndex(const AstNode& root);
  const AstNode* parent(const AstNode& node) const;
  const AstNode* nearest(const AstNode& node, NodeKind kind) const;
  const AstNode* by_id(NodeId id) const;

 private:
  std::unordered_map<const AstNode*, const AstNode*> parents_;
  std::unordered_map<NodeId, const AstNode*> ids_;
};

// Pragma tokens as the compiler splits them ("^", "0.4", ".24") joined back
// into text, with a space between a version and a following operator.
std::string join_pragma_literals(std::span<const std::string> tokens);

// "signed" / "unsigned" / "unknown" from a Solidity type string or
// elementary type name.
std::string_view signedness_of(std::string_view type);

}  // namespace sif
