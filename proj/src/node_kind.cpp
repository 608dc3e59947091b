#include "sif/node_kind.hpp"

#include <array>
#include <string_view>

namespace sif {
namespace {

constexpr std::array<std::string_view, std::size(kAllNodeKinds)> kNames = {
#define SIF_NAME_ENTRY(kind) #kind,
    SIF_NODE_KINDS(SIF_NAME_ENTRY)
#undef SIF_NAME_ENTRY
};

}  // namespace

std::string_view to_string(NodeKind kind) {
  return kNames[static_cast<std::size_t>(kind)];
}

std::optional<NodeKind> node_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAllNodeKinds[i];
  }
  return std::nullopt;
}

bool is_statement(NodeKind kind) {
  switch (kind) {
    case NodeKind::Block:
    case NodeKind::IfStatement:
    case NodeKind::WhileStatement:
    case NodeKind::DoWhileStatement:
    case NodeKind::ForStatement:
    case NodeKind::Return:
    case NodeKind::Break:
    case NodeKind::Continue:
    case NodeKind::Throw:
    case NodeKind::EmitStatement:
    case NodeKind::ExpressionStatement:
    case NodeKind::VariableDeclarationStatement:
    case NodeKind::InlineAssembly:
    case NodeKind::PlaceholderStatement:
      return true;
    default:
      return false;
  }
}

bool is_expression(NodeKind kind) {
  switch (kind) {
    case NodeKind::Assignment:
    case NodeKind::BinaryOperation:
    case NodeKind::UnaryOperation:
    case NodeKind::Conditional:
    case NodeKind::TupleExpression:
    case NodeKind::IndexAccess:
    case NodeKind::MemberAccess:
    case NodeKind::FunctionCall:
    case NodeKind::NewExpression:
    case NodeKind::Identifier:
    case NodeKind::ElementaryTypeNameExpression:
    case NodeKind::Literal:
      return true;
    default:
      return false;
  }
}

bool is_type_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::ElementaryTypeName:
    case NodeKind::UserDefinedTypeName:
    case NodeKind::FunctionTypeName:
    case NodeKind::MappingTypeName:
    case NodeKind::ArrayTypeName:
      return true;
    default:
      return false;
  }
}

bool is_declaration(NodeKind kind) {
  switch (kind) {
    case NodeKind::ContractDefinition:
    case NodeKind::StructDefinition:
    case NodeKind::EnumDefinition:
    case NodeKind::EnumValue:
    case NodeKind::FunctionDefinition:
    case NodeKind::ModifierDefinition:
    case NodeKind::EventDefinition:
      return true;
    default:
      return is_variable_like(kind);
  }
}

bool is_variable_like(NodeKind kind) {
  return kind == NodeKind::StateVariableDeclaration ||
         kind == NodeKind::VariableDeclaration || kind == NodeKind::Parameter;
}

bool is_loop(NodeKind kind) {
  return kind == NodeKind::WhileStatement ||
         kind == NodeKind::DoWhileStatement || kind == NodeKind::ForStatement;
}

}  // namespace sif
