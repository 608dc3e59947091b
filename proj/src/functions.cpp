#include <map>
#include <set>
#include <unordered_map>

#include "sif/analyses.hpp"
#include "sif/codegen.hpp"

namespace sif {
namespace {

std::vector<Param> params_of(const AstNode& list) {
  std::vector<Param> out;
  for (const auto& p : list.children()) {
    Param param;
    if (p.child_count() > 0) param.type = emit_node(p.child(0));
    param.name = p.get_string("name");
    out.push_back(std::move(param));
  }
  return out;
}

std::string render_params(const std::vector<Param>& params) {
  std::string out = "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i].type;
    if (!params[i].name.empty()) out += " " + params[i].name;
  }
  return out + ")";
}

bool is_callable(NodeKind k) {
  return k == NodeKind::FunctionDefinition || k == NodeKind::ModifierDefinition;
}

}  // namespace

std::string FunctionSummary::render() const {
  return "[In " + contract + "] " + name + render_params(params) +
         " returns " + render_params(returns);
}

std::string function_display_name(const AstNode& fn) {
  if (fn.kind() != NodeKind::FunctionDefinition) return fn.get_string("name");
  const std::string kind = fn.get_string("kind");
  const std::string name = fn.get_string("name");
  if (kind == "constructor") return "constructor";
  if (kind == "fallback") return "fallback";
  if (name.empty()) return fn.get_bool("isConstructor") ? "constructor" : "fallback";
  return name;
}

std::vector<FunctionSummary> list_functions(const SourceUnit& unit,
                                            const ListOptions& options) {
  std::vector<FunctionSummary> out;
  for (const auto& top : unit.root().children()) {
    if (top.kind() != NodeKind::ContractDefinition) continue;
    if (!options.include_interfaces &&
        top.get_string("contractKind") == "interface") {
      continue;
    }
    for (const auto& member : top.children()) {
      if (member.kind() != NodeKind::FunctionDefinition) continue;
      out.push_back({top.get_string("name"), function_display_name(member),
                     params_of(member.child(0)), params_of(member.child(1)),
                     member.id()});
    }
  }
  return out;
}

std::optional<std::size_t> CallGraph::index_of(std::string_view qualified) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].qualified == qualified) return i;
  }
  return std::nullopt;
}

CallGraph build_call_graph(const SourceUnit& unit) {
  CallGraph graph;
  std::unordered_map<NodeId, std::size_t> by_id;
  // name -> node indices, per contract and unit-wide, for units (or
  // synthesized calls) without resolved references.
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> by_name;
  std::map<std::string, std::vector<std::size_t>> by_bare_name;
  std::set<std::string> taken;

  for (const auto& top : unit.root().children()) {
    if (top.kind() != NodeKind::ContractDefinition) continue;
    const std::string contract = top.get_string("name");
    for (const auto& member : top.children()) {
      if (!is_callable(member.kind())) continue;
      CallGraphNode node{member.id(), contract, function_display_name(member),
                         member.kind(), ""};
      node.qualified = contract + "." + node.name;
      if (!taken.insert(node.qualified).second) {
        node.qualified += "#" + std::to_string(member.id());
        taken.insert(node.qualified);
      }
      std::size_t index = graph.nodes.size();
      by_id.emplace(member.id(), index);
      by_name[{contract, member.get_string("name")}].push_back(index);
      by_bare_name[member.get_string("name")].push_back(index);
      graph.nodes.push_back(std::move(node));
    }
  }

  auto resolve = [&](const AstNode& callee, const std::string& contract)
      -> std::optional<std::size_t> {
    std::optional<std::int64_t> ref;
    std::string name;
    bool name_fallback = false;
    if (callee.kind() == NodeKind::Identifier) {
      ref = callee.get_int("referencedDeclaration");
      name = callee.get_string("name");
      name_fallback = true;
    } else if (callee.kind() == NodeKind::MemberAccess) {
      ref = callee.get_int("referencedDeclaration");
      name = callee.get_string("memberName");
      const AstNode& base = callee.child(0);
      // Without a reference, only this.f / super.f are known to be local.
      name_fallback = base.kind() == NodeKind::Identifier &&
                      (base.get_string("name") == "this" ||
                       base.get_string("name") == "super");
    } else {
      return std::nullopt;
    }
    if (ref) {
      auto it = by_id.find(*ref);
      if (it == by_id.end()) return std::nullopt;
      return it->second;
    }
    if (!name_fallback) return std::nullopt;
    if (auto it = by_name.find({contract, name}); it != by_name.end()) {
      return it->second.front();
    }
    if (auto it = by_bare_name.find(name); it != by_bare_name.end()) {
      return it->second.front();
    }
    return std::nullopt;
  };

  std::set<std::pair<std::size_t, std::size_t>> seen;
  auto add_edge = [&](std::size_t from, std::size_t to) {
    if (seen.insert({from, to}).second) graph.edges.emplace_back(from, to);
  };

  for (const auto& top : unit.root().children()) {
    if (top.kind() != NodeKind::ContractDefinition) continue;
    const std::string contract = top.get_string("name");
    for (const auto& member : top.children()) {
      if (!is_callable(member.kind())) continue;
      std::size_t caller = by_id.at(member.id());
      for (std::size_t i = 0; i < member.child_count(); ++i) {
        const AstNode& part = member.child(i);
        if (part.kind() == NodeKind::ParameterList) continue;
        part.for_each([&](const AstNode& n) {
          if (n.kind() == NodeKind::ModifierInvocation) {
            if (auto callee = resolve(n.child(0), contract)) {
              add_edge(caller, *callee);
            }
          } else if (n.kind() == NodeKind::FunctionCall) {
            const std::string kind = n.get_string("kind", "functionCall");
            if (kind != "functionCall") return;
            if (auto callee = resolve(n.child(0), contract)) {
              add_edge(caller, *callee);
            }
          }
        });
      }
    }
  }
  return graph;
}

std::size_t count_loops(const AstNode& root) {
  std::size_t n = 0;
  root.for_each([&](const AstNode& node) { n += is_loop(node.kind()) ? 1 : 0; });
  return n;
}

std::size_t count_loops(const SourceUnit& unit) { return count_loops(unit.root()); }

}  // namespace sif
