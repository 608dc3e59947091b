#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sif/ast.hpp"

namespace sif {

// ---- function listing ----

struct Param {
  std::string type;  // emitted type name, no data location
  std::string name;
};

struct FunctionSummary {
  std::string contract;
  std::string name;
  std::vector<Param> params;
  std::vector<Param> returns;
  NodeId id = 0;

  // "[In C] f(uint a) returns (bool ok)"
  std::string render() const;
};

// Display name: the declared name, or "constructor" / "fallback".
std::string function_display_name(const AstNode& fn);

struct ListOptions {
  // Interface members are declarations only and are left out by default.
  bool include_interfaces = false;
};

std::vector<FunctionSummary> list_functions(const SourceUnit& unit,
                                            const ListOptions& options = {});

// ---- call graph ----

struct CallGraphNode {
  NodeId id = 0;
  std::string contract;
  std::string name;
  NodeKind kind = NodeKind::FunctionDefinition;  // or ModifierDefinition
  std::string qualified;  // "Contract.function", unique within the graph
};

struct CallGraph {
  std::vector<CallGraphNode> nodes;  // source order
  // Indices into `nodes`, in order of first occurrence, deduplicated.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::optional<std::size_t> index_of(std::string_view qualified) const;
};

CallGraph build_call_graph(const SourceUnit& unit);

// ---- control-flow graph ----

enum class EdgeLabel { Unconditional, TrueBranch, FalseBranch };
std::string_view to_string(EdgeLabel label);

struct BasicBlock {
  std::size_t index = 0;
  std::vector<NodeId> statements;
  std::string preview;
  bool condition = false;    // ends in a two-way branch
  bool unreachable = false;  // non-entry block without predecessors
  bool exit = false;         // synthetic exit in semantic-returns mode
};

struct CfgEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  EdgeLabel label = EdgeLabel::Unconditional;

  friend bool operator==(const CfgEdge&, const CfgEdge&) = default;
};

struct Cfg {
  std::string function;
  std::vector<BasicBlock> blocks;
  std::vector<CfgEdge> edges;  // sorted by (from, to)
};

struct CfgOptions {
  // Route return/throw to a synthetic exit block instead of falling through.
  bool semantic_returns = false;
};

// Throws MissingBody for a function without a body.
Cfg build_cfg(const AstNode& function, const CfgOptions& options = {});

// First FunctionDefinition whose display name is `name`, optionally
// restricted to `contract`. Null when absent.
const AstNode* find_function(const SourceUnit& unit, std::string_view name,
                             std::string_view contract = {});

// ---- loops ----

std::size_t count_loops(const AstNode& root);
std::size_t count_loops(const SourceUnit& unit);

// ---- diff ----

enum class DiffCategory { KindMismatch, FieldMismatch, MissingLeft, MissingRight };
std::string_view to_string(DiffCategory category);

struct DiffRecord {
  std::vector<std::size_t> path;  // child indices from the root
  DiffCategory category = DiffCategory::FieldMismatch;
  std::string node_kind;  // kind at `path`, left side when both exist
  std::string field;  // field-mismatch only
  // Field values, or kinds for kind-mismatch, or the present subtree's
  // kind for missing-left/right (empty on the absent side).
  std::string left;
  std::string right;
  std::optional<Span> left_span;
  std::optional<Span> right_span;
};

std::string to_string(const DiffRecord& record);

std::vector<DiffRecord> ast_diff(const SourceUnit& left, const SourceUnit& right);
std::vector<DiffRecord> ast_diff(const AstNode& left, const AstNode& right);

// ---- graph text ----

std::string graph_to_dot(const CallGraph& graph);
std::string graph_to_dot(const Cfg& cfg);

}  // namespace sif
