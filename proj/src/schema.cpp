#include <array>
#include <cstdint>

#include "sif/ast.hpp"

namespace sif {
namespace {

using FT = FieldType;
using FR = FieldRole;

constexpr FieldSpec kTypeString{"typeString", FT::String, FR::Semantic};
constexpr FieldSpec kSignedness{"signedness", FT::String, FR::Semantic};
constexpr FieldSpec kReference{"referencedDeclaration", FT::Ref, FR::Semantic};
constexpr FieldSpec kMarker{"instrumentation", FT::String, FR::Marker};
constexpr FieldSpec kName{"name", FT::String};

constexpr FieldSpec kSourceUnitFields[] = {
    {"absolutePath", FT::String, FR::Semantic}};
constexpr FieldSpec kPragmaFields[] = {{"literals", FT::StringList}};
constexpr FieldSpec kImportFields[] = {
    {"file", FT::String},
    {"absolutePath", FT::String, FR::Semantic},
    {"unitAlias", FT::String},
    {"symbolAliases", FT::StringList},
};
constexpr FieldSpec kContractFields[] = {kName, {"contractKind", FT::String}};
constexpr FieldSpec kArgumentsFields[] = {{"argumentsPresent", FT::Bool}};
constexpr FieldSpec kNameOnly[] = {kName};
constexpr FieldSpec kStateVarFields[] = {
    kName,
    {"visibility", FT::String},
    {"constant", FT::Bool},
    {"storageLocation", FT::String},
    kTypeString,
    kSignedness,
    {"scope", FT::Ref, FR::Semantic},
};
constexpr FieldSpec kVarFields[] = {
    kName,
    {"storageLocation", FT::String},
    {"constant", FT::Bool},
    {"visibility", FT::String, FR::Semantic},
    kTypeString,
    kSignedness,
    {"scope", FT::Ref, FR::Semantic},
};
constexpr FieldSpec kParamFields[] = {
    kName,
    {"storageLocation", FT::String},
    {"indexed", FT::Bool},
    kTypeString,
    kSignedness,
    {"scope", FT::Ref, FR::Semantic},
};
constexpr FieldSpec kFunctionFields[] = {
    kName,
    {"kind", FT::String},
    {"isConstructor", FT::Bool},
    {"isDeclaredConst", FT::Bool, FR::Semantic},
    {"visibility", FT::String},
    {"stateMutability", FT::String},
    {"scope", FT::Ref, FR::Semantic},
};
constexpr FieldSpec kModifierFields[] = {kName, {"visibility", FT::String}};
constexpr FieldSpec kEventFields[] = {kName, {"anonymous", FT::Bool}};
constexpr FieldSpec kMarkerOnly[] = {kMarker};
constexpr FieldSpec kForFields[] = {
    {"hasInitialization", FT::Bool},
    {"hasCondition", FT::Bool},
    {"hasLoopExpression", FT::Bool},
    kMarker,
};
constexpr FieldSpec kReturnFields[] = {
    {"functionReturnParameters", FT::Ref, FR::Semantic}};
constexpr FieldSpec kVarStatementFields[] = {
    {"declarationSlots", FT::String}, kMarker};
constexpr FieldSpec kAssemblyFields[] = {{"operations", FT::String}};
constexpr FieldSpec kOperatorFields[] = {
    {"operator", FT::String}, kTypeString, kSignedness};
constexpr FieldSpec kUnaryFields[] = {
    {"operator", FT::String}, {"prefix", FT::Bool}, kTypeString, kSignedness};
constexpr FieldSpec kTypedOnly[] = {kTypeString};
constexpr FieldSpec kTupleFields[] = {
    {"isInlineArray", FT::Bool}, {"componentSlots", FT::String}, kTypeString};
constexpr FieldSpec kMemberFields[] = {
    {"memberName", FT::String}, kReference, kTypeString};
constexpr FieldSpec kCallFields[] = {
    {"kind", FT::String}, {"names", FT::StringList}, kTypeString};
constexpr FieldSpec kIdentifierFields[] = {
    kName, kReference, kTypeString, kSignedness};
constexpr FieldSpec kTypeExprFields[] = {
    {"typeName", FT::String}, kTypeString};
constexpr FieldSpec kLiteralFields[] = {
    {"kind", FT::String},
    {"value", FT::String},
    {"hexValue", FT::String},
    {"subdenomination", FT::String},
    kTypeString,
};
constexpr FieldSpec kElementaryFields[] = {
    kName, {"stateMutability", FT::String}, kTypeString, kSignedness};
constexpr FieldSpec kUserTypeFields[] = {kName, kReference, kTypeString};
constexpr FieldSpec kFunctionTypeFields[] = {
    {"visibility", FT::String}, {"stateMutability", FT::String}, kTypeString};

constexpr std::size_t kMany = SIZE_MAX;

#define SCHEMA(kind, fields, lo, hi, layout) \
  KindSchema { NodeKind::kind, fields, lo, hi, layout }

constexpr std::array kSchemas = {
    SCHEMA(SourceUnit, kSourceUnitFields, 0, kMany,
           "pragma, import and contract definitions"),
    SCHEMA(PragmaDirective, kPragmaFields, 0, 0, "-"),
    SCHEMA(ImportDirective, kImportFields, 0, 0, "-"),
    SCHEMA(ContractDefinition, kContractFields, 0, kMany,
           "InheritanceSpecifier*, members*"),
    SCHEMA(InheritanceSpecifier, kArgumentsFields, 1, kMany,
           "UserDefinedTypeName, argument*"),
    SCHEMA(StructDefinition, kNameOnly, 0, kMany, "VariableDeclaration*"),
    SCHEMA(EnumDefinition, kNameOnly, 0, kMany, "EnumValue*"),
    SCHEMA(EnumValue, kNameOnly, 0, 0, "-"),
    SCHEMA(StateVariableDeclaration, kStateVarFields, 0, 2,
           "type-name?, initial value?"),
    SCHEMA(VariableDeclaration, kVarFields, 0, 2,
           "type-name?, initial value?"),
    SCHEMA(FunctionDefinition, kFunctionFields, 2, kMany,
           "ParameterList, ParameterList (returns), ModifierInvocation*, "
           "Block?"),
    SCHEMA(ModifierDefinition, kModifierFields, 2, 2, "ParameterList, Block"),
    SCHEMA(ModifierInvocation, kArgumentsFields, 1, kMany,
           "Identifier, argument*"),
    SCHEMA(EventDefinition, kEventFields, 1, 1, "ParameterList"),
    SCHEMA(UsingForDirective, {}, 1, 2,
           "UserDefinedTypeName (library), type-name? (absent means *)"),
    SCHEMA(ParameterList, {}, 0, kMany, "Parameter*"),
    SCHEMA(Parameter, kParamFields, 0, 1, "type-name?"),
    SCHEMA(Block, kMarkerOnly, 0, kMany, "statement*"),
    SCHEMA(IfStatement, kMarkerOnly, 2, 3,
           "condition, then-branch, else-branch?"),
    SCHEMA(WhileStatement, {}, 2, 2, "condition, body"),
    SCHEMA(DoWhileStatement, {}, 2, 2, "condition, body"),
    SCHEMA(ForStatement, kForFields, 1, 4,
           "init?, condition?, loop-expression?, body (presence flags)"),
    SCHEMA(Return, kReturnFields, 0, 1, "expression?"),
    SCHEMA(Break, {}, 0, 0, "-"),
    SCHEMA(Continue, {}, 0, 0, "-"),
    SCHEMA(Throw, {}, 0, 0, "-"),
    SCHEMA(EmitStatement, {}, 1, 1, "FunctionCall"),
    SCHEMA(ExpressionStatement, kMarkerOnly, 1, 1, "expression"),
    SCHEMA(VariableDeclarationStatement, kVarStatementFields, 1, kMany,
           "VariableDeclaration+, initial value?"),
    SCHEMA(InlineAssembly, kAssemblyFields, 0, 0, "-"),
    SCHEMA(PlaceholderStatement, {}, 0, 0, "-"),
    SCHEMA(Assignment, kOperatorFields, 2, 2, "left, right"),
    SCHEMA(BinaryOperation, kOperatorFields, 2, 2, "left, right"),
    SCHEMA(UnaryOperation, kUnaryFields, 1, 1, "operand"),
    SCHEMA(Conditional, kTypedOnly, 3, 3, "condition, true, false"),
    SCHEMA(TupleExpression, kTupleFields, 0, kMany, "component*"),
    SCHEMA(IndexAccess, kTypedOnly, 1, 2, "base, index?"),
    SCHEMA(MemberAccess, kMemberFields, 1, 1, "expression"),
    SCHEMA(FunctionCall, kCallFields, 1, kMany, "callee, argument*"),
    SCHEMA(NewExpression, kTypedOnly, 1, 1, "type-name"),
    SCHEMA(Identifier, kIdentifierFields, 0, 0, "-"),
    SCHEMA(ElementaryTypeNameExpression, kTypeExprFields, 0, 0, "-"),
    SCHEMA(Literal, kLiteralFields, 0, 0, "-"),
    SCHEMA(ElementaryTypeName, kElementaryFields, 0, 0, "-"),
    SCHEMA(UserDefinedTypeName, kUserTypeFields, 0, 0, "-"),
    SCHEMA(FunctionTypeName, kFunctionTypeFields, 2, 2,
           "ParameterList, ParameterList (returns)"),
    SCHEMA(MappingTypeName, kTypedOnly, 2, 2, "key type-name, value type-name"),
    SCHEMA(ArrayTypeName, kTypedOnly, 1, 2, "base type-name, length?"),
};

#undef SCHEMA

constexpr bool schemas_in_enum_order() {
  for (std::size_t i = 0; i < kSchemas.size(); ++i) {
    if (kSchemas[i].kind != kAllNodeKinds[i]) return false;
  }
  return kSchemas.size() == std::size(kAllNodeKinds);
}

std::string describe(const AstNode& node) {
  return std::string(to_string(node.kind())) + " (id " +
         std::to_string(node.id()) + ")";
}

std::size_t count_true(const AstNode& node,
                       std::initializer_list<std::string_view> flags) {
  std::size_t n = 0;
  for (auto flag : flags) n += node.get_bool(flag) ? 1 : 0;
  return n;
}

std::optional<std::string> check_slots(const AstNode& node,
                                       std::string_view field,
                                       std::size_t present) {
  if (!node.has(field)) return std::nullopt;
  const std::string slots = node.get_string(field);
  std::size_t filled = 0;
  for (char c : slots) {
    if (c == 'x') {
      ++filled;
    } else if (c != '_') {
      return describe(node) + ": " + std::string(field) +
             " may only contain 'x' and '_'";
    }
  }
  if (filled != present) {
    return describe(node) + ": " + std::string(field) + " lists " +
           std::to_string(filled) + " components but node has " +
           std::to_string(present);
  }
  return std::nullopt;
}

}  // namespace

static_assert(schemas_in_enum_order());

const FieldSpec* KindSchema::field(std::string_view name) const {
  for (const auto& spec : fields) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

const KindSchema& schema_for(NodeKind kind) {
  return kSchemas[static_cast<std::size_t>(kind)];
}

std::optional<std::string> check_layout(const AstNode& node) {
  const KindSchema& schema = schema_for(node.kind());
  const std::size_t n = node.child_count();
  if (n < schema.min_children || n > schema.max_children) {
    std::string bound =
        schema.max_children == SIZE_MAX
            ? "at least " + std::to_string(schema.min_children)
        : schema.min_children == schema.max_children
            ? std::to_string(schema.min_children)
            : std::to_string(schema.min_children) + ".." +
                  std::to_string(schema.max_children);
    return describe(node) + " has " + std::to_string(n) +
           " children, expected " + bound + " (" +
           std::string(schema.layout) + ")";
  }
  auto children = node.children();
  auto kind_at = [&](std::size_t i) { return children[i].kind(); };

  switch (node.kind()) {
    case NodeKind::ForStatement: {
      std::size_t expected =
          1 + count_true(node, {"hasInitialization", "hasCondition",
                                "hasLoopExpression"});
      if (n != expected) {
        return describe(node) + " has " + std::to_string(n) +
               " children but its presence flags call for " +
               std::to_string(expected);
      }
      break;
    }
    case NodeKind::FunctionDefinition: {
      if (kind_at(0) != NodeKind::ParameterList ||
          kind_at(1) != NodeKind::ParameterList) {
        return describe(node) + " must start with two parameter lists";
      }
      for (std::size_t i = 2; i < n; ++i) {
        bool last = i + 1 == n;
        if (kind_at(i) == NodeKind::ModifierInvocation) continue;
        if (last && kind_at(i) == NodeKind::Block) continue;
        return describe(node) + ": unexpected " +
               std::string(to_string(kind_at(i))) + " at child " +
               std::to_string(i);
      }
      break;
    }
    case NodeKind::ModifierDefinition:
      if (kind_at(0) != NodeKind::ParameterList ||
          kind_at(1) != NodeKind::Block) {
        return describe(node) + " must hold a parameter list and a block";
      }
      break;
    case NodeKind::ParameterList:
      for (const auto& child : children) {
        if (child.kind() != NodeKind::Parameter) {
          return describe(node) + " may only contain parameters";
        }
      }
      break;
    case NodeKind::EventDefinition:
    case NodeKind::FunctionTypeName:
      for (const auto& child : children) {
        if (child.kind() != NodeKind::ParameterList) {
          return describe(node) + " children must be parameter lists";
        }
      }
      break;
    case NodeKind::VariableDeclarationStatement: {
      std::size_t decls = 0;
      while (decls < n && kind_at(decls) == NodeKind::VariableDeclaration) {
        ++decls;
      }
      if (decls == 0) return describe(node) + " declares nothing";
      if (n - decls > 1) {
        return describe(node) + " has more than one initial value";
      }
      if (auto err = check_slots(node, "declarationSlots", decls)) return err;
      break;
    }
    case NodeKind::TupleExpression:
      if (auto err = check_slots(node, "componentSlots", n)) return err;
      break;
    case NodeKind::StateVariableDeclaration:
    case NodeKind::VariableDeclaration:
    case NodeKind::Parameter:
      if (n == 2 && !is_type_name(kind_at(0))) {
        return describe(node) + ": first of two children must be a type name";
      }
      if (node.kind() == NodeKind::Parameter && n == 1 &&
          !is_type_name(kind_at(0))) {
        return describe(node) + ": parameter child must be a type name";
      }
      break;
    case NodeKind::StructDefinition:
      for (const auto& child : children) {
        if (child.kind() != NodeKind::VariableDeclaration) {
          return describe(node) + " members must be variable declarations";
        }
      }
      break;
    case NodeKind::EnumDefinition:
      for (const auto& child : children) {
        if (child.kind() != NodeKind::EnumValue) {
          return describe(node) + " may only contain enum values";
        }
      }
      break;
    case NodeKind::InheritanceSpecifier:
    case NodeKind::UsingForDirective:
      if (kind_at(0) != NodeKind::UserDefinedTypeName) {
        return describe(node) + " must name a user-defined type first";
      }
      break;
    case NodeKind::ModifierInvocation:
      if (kind_at(0) != NodeKind::Identifier) {
        return describe(node) + " must name the modifier first";
      }
      break;
    case NodeKind::EmitStatement:
      if (kind_at(0) != NodeKind::FunctionCall) {
        return describe(node) + " must wrap a function call";
      }
      break;
    case NodeKind::MappingTypeName:
      if (!is_type_name(kind_at(0)) || !is_type_name(kind_at(1))) {
        return describe(node) + " key and value must be type names";
      }
      break;
    case NodeKind::ArrayTypeName:
    case NodeKind::NewExpression:
      if (!is_type_name(kind_at(0))) {
        return describe(node) + " must start with a type name";
      }
      break;
    default:
      break;
  }
  return std::nullopt;
}

}  // namespace sif
