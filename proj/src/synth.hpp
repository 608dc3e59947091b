#pragma once

// Builders for the small statement shapes the transforms synthesize. Nodes
// carry no span; semantic fields are filled only where later passes read
// them (type strings for signedness).

#include <functional>
#include <string>
#include <vector>

#include "sif/ast.hpp"
#include "sif/codegen.hpp"

namespace sif::synth {

class Builder {
 public:
  explicit Builder(std::function<NodeId()> next_id) : next_(std::move(next_id)) {}

  AstNode node(NodeKind kind) { return AstNode(next_(), kind); }

  AstNode identifier(const std::string& name,
                     const std::string& type_string = {}) {
    AstNode n = node(NodeKind::Identifier);
    n.set("name", name);
    if (!type_string.empty()) n.set("typeString", type_string);
    return n;
  }

  AstNode number(const std::string& value) {
    AstNode n = node(NodeKind::Literal);
    n.set("kind", std::string("number"));
    n.set("value", value);
    // The compiler records every literal's bytes in hex as well.
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string hex;
    for (unsigned char ch : value) {
      hex += kDigits[ch >> 4];
      hex += kDigits[ch & 15];
    }
    n.set("hexValue", hex);
    n.set("typeString", "int_const " + value);
    return n;
  }

  AstNode binary(const std::string& op, AstNode left, AstNode right) {
    AstNode n = node(NodeKind::BinaryOperation);
    n.set("operator", op);
    n.add_child(std::move(left));
    n.add_child(std::move(right));
    return n;
  }

  // Parenthesized expression (a one-element tuple).
  AstNode paren(AstNode inner) {
    AstNode n = node(NodeKind::TupleExpression);
    n.add_child(std::move(inner));
    return n;
  }

  AstNode call(const std::string& callee, std::vector<AstNode> args) {
    AstNode n = node(NodeKind::FunctionCall);
    n.set("kind", std::string("functionCall"));
    n.add_child(identifier(callee));
    for (auto& a : args) n.add_child(std::move(a));
    return n;
  }

  AstNode expression_statement(AstNode expr) {
    AstNode n = node(NodeKind::ExpressionStatement);
    n.add_child(std::move(expr));
    return n;
  }

  AstNode if_else(AstNode condition, AstNode then_branch, AstNode else_branch) {
    AstNode n = node(NodeKind::IfStatement);
    n.add_child(std::move(condition));
    n.add_child(std::move(then_branch));
    n.add_child(std::move(else_branch));
    return n;
  }

  // `<type> <name> = <value>;`
  AstNode declare(const std::string& type, const std::string& name,
                  AstNode value) {
    AstNode type_name = node(NodeKind::ElementaryTypeName);
    type_name.set("name", type);
    type_name.set("typeString", type);
    AstNode var = node(NodeKind::VariableDeclaration);
    var.set("name", name);
    var.set("storageLocation", std::string("default"));
    var.set("typeString", type);
    var.add_child(std::move(type_name));
    AstNode n = node(NodeKind::VariableDeclarationStatement);
    n.add_child(std::move(var));
    n.add_child(std::move(value));
    return n;
  }

 private:
  std::function<NodeId()> next_;
};

// Deep copy with fresh ids.
inline AstNode copy(const AstNode& n, Builder& b) {
  AstNode out = b.node(n.kind());
  for (const auto& [field, value] : n.attributes()) out.set(field, value);
  for (const auto& c : n.children()) out.add_child(copy(c, b));
  return out;
}

// Emitted text without the trailing newline of a statement.
inline std::string text_of(const AstNode& n) {
  std::string out = emit_node(n);
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

}  // namespace sif::synth
