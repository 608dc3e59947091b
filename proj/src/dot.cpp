#include "sif/analyses.hpp"

namespace sif {
namespace {

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      // Left-justified lines read better for code previews.
      case '\n': out += "\\l"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace

std::string graph_to_dot(const CallGraph& graph) {
  std::string out = "digraph callgraph {\n";
  for (const auto& node : graph.nodes) {
    out += "  " + quote(node.qualified);
    if (node.kind == NodeKind::ModifierDefinition) out += " [shape=box]";
    out += ";\n";
  }
  for (const auto& [from, to] : graph.edges) {
    out += "  " + quote(graph.nodes[from].qualified) + " -> " +
           quote(graph.nodes[to].qualified) + ";\n";
  }
  return out + "}\n";
}

std::string graph_to_dot(const Cfg& cfg) {
  std::string out = "digraph " + quote(cfg.function) + " {\n";
  out += "  node [shape=box];\n";
  for (const auto& block : cfg.blocks) {
    std::string label = "Node [" + std::to_string(block.index) + "]";
    if (!block.preview.empty()) label += "\n" + block.preview + "\n";
    out += "  B" + std::to_string(block.index) + " [label=" + quote(label);
    if (block.unreachable) out += ", style=dashed";
    out += "];\n";
  }
  for (const auto& edge : cfg.edges) {
    out += "  B" + std::to_string(edge.from) + " -> B" + std::to_string(edge.to);
    if (edge.label != EdgeLabel::Unconditional) {
      out += " [label=" + quote(to_string(edge.label)) + "]";
    }
    out += ";\n";
  }
  return out + "}\n";
}

}  // namespace sif
