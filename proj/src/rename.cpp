#include <algorithm>
#include <cctype>
#include <iterator>
#include <unordered_set>

#include "sif/transforms.hpp"
#include "sif/traverse.hpp"

namespace sif {
namespace {

constexpr std::string_view kReserved[] = {
    "abstract", "after", "alias", "anonymous", "apply", "as", "assembly",
    "auto", "bool", "break", "byte", "bytes", "calldata", "case", "catch",
    "constant", "constructor", "continue", "contract", "copyof", "default",
    "define", "delete", "do", "else", "emit", "enum", "event", "external",
    "false", "final", "fixed", "for", "function", "hex", "if", "immutable",
    "implements", "import", "in", "indexed", "inline", "interface", "internal",
    "is", "let", "library", "macro", "mapping", "match", "memory", "modifier",
    "mutable", "new", "null", "of", "override", "partial", "payable", "pragma",
    "private", "promise", "public", "pure", "reference", "relocatable",
    "return", "returns", "sealed", "sizeof", "static", "storage", "string",
    "struct", "supports", "switch", "this", "super", "throw", "true", "try",
    "type", "typedef", "typeof", "ufixed", "uint", "int", "address", "unchecked",
    "using", "var", "view", "virtual", "while",
};

bool is_reserved(std::string_view name) {
  if (std::find(std::begin(kReserved), std::end(kReserved), name) !=
      std::end(kReserved)) {
    return true;
  }
  // Sized elementary types: uint8, int256, bytes32, fixed128x18, ...
  for (std::string_view prefix : {"uint", "int", "bytes", "ufixed", "fixed"}) {
    if (name.size() > prefix.size() && name.substr(0, prefix.size()) == prefix &&
        std::all_of(name.begin() + prefix.size(), name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == 'x'; })) {
      return true;
    }
  }
  return false;
}

bool declares(IdentifierKind kind, NodeKind node) {
  switch (kind) {
    case IdentifierKind::Contract: return node == NodeKind::ContractDefinition;
    case IdentifierKind::Function: return node == NodeKind::FunctionDefinition;
    case IdentifierKind::Variable:
      return node == NodeKind::VariableDeclaration ||
             node == NodeKind::StateVariableDeclaration ||
             node == NodeKind::Parameter;
    case IdentifierKind::Struct: return node == NodeKind::StructDefinition;
    case IdentifierKind::Enum: return node == NodeKind::EnumDefinition;
    case IdentifierKind::Event: return node == NodeKind::EventDefinition;
    case IdentifierKind::Modifier: return node == NodeKind::ModifierDefinition;
  }
  return false;
}

bool is_named_declaration(NodeKind k) {
  return is_declaration(k) || is_variable_like(k) || k == NodeKind::EnumValue;
}

bool is_scope(NodeKind k) {
  switch (k) {
    case NodeKind::SourceUnit:
    case NodeKind::ContractDefinition:
    case NodeKind::FunctionDefinition:
    case NodeKind::ModifierDefinition:
    case NodeKind::StructDefinition:
    case NodeKind::EnumDefinition:
    case NodeKind::EventDefinition:
      return true;
    default:
      return false;
  }
}

const AstNode* scope_of(const AstNode& node, const ParentIndex& parents) {
  for (const AstNode* p = parents.parent(node); p; p = parents.parent(*p)) {
    if (is_scope(p->kind())) return p;
  }
  return nullptr;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = path.find('.', start);
    parts.push_back(path.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return parts;
}

}  // namespace

std::string_view to_string(IdentifierKind kind) {
  switch (kind) {
    case IdentifierKind::Contract: return "contract";
    case IdentifierKind::Function: return "function";
    case IdentifierKind::Variable: return "variable";
    case IdentifierKind::Struct: return "struct";
    case IdentifierKind::Enum: return "enum";
    case IdentifierKind::Event: return "event";
    case IdentifierKind::Modifier: return "modifier";
  }
  return "";
}

std::optional<IdentifierKind> parse_identifier_kind(std::string_view text) {
  for (auto k : {IdentifierKind::Contract, IdentifierKind::Function,
                 IdentifierKind::Variable, IdentifierKind::Struct,
                 IdentifierKind::Enum, IdentifierKind::Event,
                 IdentifierKind::Modifier}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
  };
  if (!head(name[0])) return false;
  for (char c : name) {
    if (!head(c) && !std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return !is_reserved(name);
}

RenameResult rename(const SourceUnit& unit, const RenameRequest& req) {
  if (req.old_name == req.new_name) {
    throw Error(ErrorCode::InvalidRequest, "old and new names are the same");
  }
  if (!is_valid_identifier(req.new_name)) {
    throw Error(ErrorCode::InvalidRequest,
                "'" + req.new_name + "' is not a valid identifier");
  }

  std::unordered_set<NodeId> targets;
  std::unordered_set<NodeId> target_contracts;
  std::vector<const AstNode*> declarations;
  unit.root().for_each([&](const AstNode& n) {
    if (declares(req.kind, n.kind()) && n.get_string("name") == req.old_name) {
      targets.insert(n.id());
      declarations.push_back(&n);
      if (n.kind() == NodeKind::ContractDefinition) target_contracts.insert(n.id());
    }
  });
  if (targets.empty()) {
    throw Error(ErrorCode::NotFound, "no " + std::string(to_string(req.kind)) +
                                         " named '" + req.old_name + "'");
  }

  RenameResult result;
  ParentIndex parents(unit.root());
  std::unordered_set<NodeId> warned;
  for (const AstNode* decl : declarations) {
    const AstNode* scope = scope_of(*decl, parents);
    if (!scope || !warned.insert(scope->id()).second) continue;
    scope->for_each([&](const AstNode& n) {
      if (&n == decl || !is_named_declaration(n.kind())) return;
      if (n.get_string("name") != req.new_name) return;
      if (scope_of(n, parents) != scope) return;
      result.warnings.push_back(
          "'" + req.new_name + "' is already declared as " +
          std::string(to_string(n.kind())) + " (id " + std::to_string(n.id()) +
          ") in the scope of " + std::string(to_string(scope->kind())) +
          (scope->kind() == NodeKind::SourceUnit
               ? std::string()
               : " '" + scope->get_string("name") + "'"));
    });
  }

  // Struct, function and event declarations owning a target member or
  // parameter; named call arguments ("S({a: 1})") bind through these.
  std::unordered_set<NodeId> owners;
  for (const AstNode* decl : declarations) {
    const AstNode* p = parents.parent(*decl);
    if (p && p->kind() == NodeKind::ParameterList) p = parents.parent(*p);
    if (p) owners.insert(p->id());
  }

  auto self_member = [](const AstNode& member) {
    const AstNode& base = member.child(0);
    if (base.kind() != NodeKind::Identifier) return false;
    std::string name = base.get_string("name");
    return name == "this" || name == "super";
  };

  // A reference binds by id; without one, by name.
  auto bound = [&](const AstNode& n, const std::string& name) {
    std::optional<std::int64_t> ref = n.get_int("referencedDeclaration");
    if (ref) return targets.count(*ref) > 0;
    return name == req.old_name;
  };

  std::size_t count = 0;
  Hooks hooks;
  hooks.visit = [&](Cursor& c) {
    const AstNode& n = c.node();
    if (targets.count(n.id())) {
      c.set("name", req.new_name);
      ++count;
      return;
    }
    switch (n.kind()) {
      case NodeKind::FunctionDefinition: {
        // Pre-0.4.22 constructors are named after their contract.
        const AstNode* owner = c.parent();
        if (owner && target_contracts.count(owner->id()) &&
            n.get_string("name") == req.old_name &&
            (n.get_bool("isConstructor") || n.get_string("kind") == "constructor")) {
          c.set("name", req.new_name);
          ++count;
        }
        break;
      }
      case NodeKind::Identifier:
        if (bound(n, n.get_string("name"))) {
          c.set("name", req.new_name);
          ++count;
        }
        break;
      case NodeKind::MemberAccess:
        // Compiler output leaves built-in members (msg.value, x.length)
        // without an id, so only `this.f` / `super.f` fall back to names.
        if (n.get_int("referencedDeclaration")
                ? bound(n, n.get_string("memberName"))
                : self_member(n) && n.get_string("memberName") == req.old_name) {
          c.set("memberName", req.new_name);
          ++count;
        }
        break;
      case NodeKind::FunctionCall: {
        auto names = n.get_strings("names");
        const AstNode& callee = n.child(0);
        std::optional<std::int64_t> ref;
        if (callee.kind() == NodeKind::Identifier || callee.kind() == NodeKind::MemberAccess) {
          ref = callee.get_int("referencedDeclaration");
        }
        if (names.empty() || !ref || !owners.count(*ref)) break;
        std::size_t changed = 0;
        for (auto& name : names) {
          if (name == req.old_name) {
            name = req.new_name;
            ++changed;
          }
        }
        if (changed) {
          c.set("names", names);
          count += changed;
        }
        break;
      }
      case NodeKind::UserDefinedTypeName: {
        auto parts = split_path(n.get_string("name"));
        std::size_t changed = 0;
        if (bound(n, parts.back())) {
          parts.back() = req.new_name;
          ++changed;
        }
        // Qualifying components ("C.S") name contracts.
        if (req.kind == IdentifierKind::Contract) {
          for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            if (parts[i] == req.old_name) {
              parts[i] = req.new_name;
              ++changed;
            }
          }
        }
        if (changed) {
          std::string joined;
          for (std::size_t i = 0; i < parts.size(); ++i) {
            joined += (i ? "." : "") + parts[i];
          }
          c.set("name", joined);
          count += changed;
        }
        break;
      }
      default:
        break;
    }
  };
  result.unit = walk(unit, hooks).unit;
  result.count = count;
  return result;
}

}  // namespace sif
