#pragma once

#include <optional>
#include <string_view>

namespace sif {

// X(kind) for every syntactic category the toolkit understands. The set is
// closed: ingestion rejects anything else.
#define SIF_NODE_KINDS(X)          \
  X(SourceUnit)                    \
  X(PragmaDirective)               \
  X(ImportDirective)               \
  X(ContractDefinition)            \
  X(InheritanceSpecifier)          \
  X(StructDefinition)              \
  X(EnumDefinition)                \
  X(EnumValue)                     \
  X(StateVariableDeclaration)      \
  X(VariableDeclaration)           \
  X(FunctionDefinition)            \
  X(ModifierDefinition)            \
  X(ModifierInvocation)            \
  X(EventDefinition)               \
  X(UsingForDirective)             \
  X(ParameterList)                 \
  X(Parameter)                     \
  X(Block)                         \
  X(IfStatement)                   \
  X(WhileStatement)                \
  X(DoWhileStatement)              \
  X(ForStatement)                  \
  X(Return)                        \
  X(Break)                         \
  X(Continue)                      \
  X(Throw)                         \
  X(EmitStatement)                 \
  X(ExpressionStatement)           \
  X(VariableDeclarationStatement)  \
  X(InlineAssembly)                \
  X(PlaceholderStatement)          \
  X(Assignment)                    \
  X(BinaryOperation)               \
  X(UnaryOperation)                \
  X(Conditional)                   \
  X(TupleExpression)               \
  X(IndexAccess)                   \
  X(MemberAccess)                  \
  X(FunctionCall)                  \
  X(NewExpression)                 \
  X(Identifier)                    \
  X(ElementaryTypeNameExpression)  \
  X(Literal)                       \
  X(ElementaryTypeName)            \
  X(UserDefinedTypeName)           \
  X(FunctionTypeName)              \
  X(MappingTypeName)               \
  X(ArrayTypeName)

enum class NodeKind {
#define SIF_ENUM_ENTRY(kind) kind,
  SIF_NODE_KINDS(SIF_ENUM_ENTRY)
#undef SIF_ENUM_ENTRY
};

inline constexpr NodeKind kAllNodeKinds[] = {
#define SIF_ARRAY_ENTRY(kind) NodeKind::kind,
    SIF_NODE_KINDS(SIF_ARRAY_ENTRY)
#undef SIF_ARRAY_ENTRY
};

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view name);

// Category predicates used throughout the analyses and the emitter.
bool is_statement(NodeKind kind);
bool is_expression(NodeKind kind);
bool is_type_name(NodeKind kind);
bool is_declaration(NodeKind kind);
bool is_variable_like(NodeKind kind);  // state variable, local, parameter
bool is_loop(NodeKind kind);

}  // namespace sif
