#include "sif/codegen.hpp"

#include <cstdio>

namespace sif {
namespace {

constexpr int kPrimary = 18;
constexpr int kPostfix = 17;
constexpr int kPrefix = 16;
constexpr int kConditional = 4;
constexpr int kAssignment = 3;

int binary_precedence(std::string_view op) {
  if (op == "**") return 15;
  if (op == "*" || op == "/" || op == "%") return 14;
  if (op == "+" || op == "-") return 13;
  if (op == "<<" || op == ">>") return 12;
  if (op == "&") return 11;
  if (op == "^") return 10;
  if (op == "|") return 9;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 8;
  if (op == "==" || op == "!=") return 7;
  if (op == "&&") return 6;
  if (op == "||") return 5;
  return kPrimary;
}

std::string escape_string(std::string_view raw) {
  std::string out;
  for (unsigned char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        // '/' is escaped before '/' or '*' so output never holds comment
        // openers, and non-printables keep the output plain ASCII.
        if (c < 0x20 || c >= 0x7f ||
            (c == '/' && !out.empty() && out.back() == '/')) {
          char buf[5];
          std::snprintf(buf, sizeof buf, "\\x%02x", c);
          out += buf;
        } else if (c == '*' && !out.empty() && out.back() == '/') {
          out += "\\x2a";
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

bool one_line_member(NodeKind k) {
  return k == NodeKind::StateVariableDeclaration ||
         k == NodeKind::EventDefinition || k == NodeKind::UsingForDirective;
}

class Emitter {
 public:
  explicit Emitter(const FormatConfig& fmt) : fmt_(fmt) {}

  std::string unit(const AstNode& root) {
    std::string out;
    const AstNode* prev = nullptr;
    for (const auto& top : root.children()) {
      if (prev) {
        bool grouped = prev->kind() == top.kind() &&
                       top.kind() != NodeKind::ContractDefinition;
        out += grouped ? "\n" : "\n\n";
      }
      out += declaration(top, 0);
      prev = &top;
    }
    if (!out.empty()) out += "\n";
    return out;
  }

  std::string any(const AstNode& n) {
    if (n.kind() == NodeKind::SourceUnit) return unit(n);
    if (is_statement(n.kind())) return statement(n, 0) + "\n";
    switch (n.kind()) {
      case NodeKind::PragmaDirective:
      case NodeKind::ImportDirective:
      case NodeKind::ContractDefinition:
      case NodeKind::StructDefinition:
      case NodeKind::EnumDefinition:
      case NodeKind::StateVariableDeclaration:
      case NodeKind::FunctionDefinition:
      case NodeKind::ModifierDefinition:
      case NodeKind::EventDefinition:
      case NodeKind::UsingForDirective:
        return declaration(n, 0) + "\n";
      case NodeKind::ParameterList:
        return parameter_list(n);
      case NodeKind::Parameter:
      case NodeKind::VariableDeclaration:
        return variable(n);
      case NodeKind::EnumValue:
        return n.get_string("name");
      case NodeKind::InheritanceSpecifier:
      case NodeKind::ModifierInvocation:
        return invocation(n);
      default:
        return is_type_name(n.kind()) ? type_name(n) : expression(n);
    }
  }

 private:
  void check(const AstNode& n) {
    if (auto problem = check_layout(n)) {
      throw Error(ErrorCode::ArityViolation, *problem);
    }
  }

  std::string indent(int depth) const {
    return std::string(static_cast<std::size_t>(depth * fmt_.indent_width), ' ');
  }

  // Returns text whose first line carries no indentation; later lines are
  // indented absolutely for `depth`.
  std::string declaration(const AstNode& n, int depth) {
    check(n);
    switch (n.kind()) {
      case NodeKind::PragmaDirective: {
        auto literals = n.get_strings("literals");
        std::string out = "pragma";
        if (!literals.empty()) {
          out += " " + literals.front();
          auto rest = std::span<const std::string>(literals).subspan(1);
          if (!rest.empty()) out += " " + join_pragma_literals(rest);
        }
        return out + ";";
      }
      case NodeKind::ImportDirective: {
        std::string file = "\"" + escape_string(n.get_string("file")) + "\"";
        auto symbols = n.get_strings("symbolAliases");
        if (!symbols.empty()) {
          std::string list;
          for (const auto& s : symbols) list += (list.empty() ? "" : ", ") + s;
          return "import {" + list + "} from " + file + ";";
        }
        std::string alias = n.get_string("unitAlias");
        return "import " + file + (alias.empty() ? "" : " as " + alias) + ";";
      }
      case NodeKind::ContractDefinition:
        return contract(n, depth);
      case NodeKind::StructDefinition: {
        std::string out = "struct " + n.get_string("name") + " {\n";
        for (const auto& m : n.children()) {
          out += indent(depth + 1) + variable(m) + ";\n";
        }
        return out + indent(depth) + "}";
      }
      case NodeKind::EnumDefinition: {
        std::string out = "enum " + n.get_string("name") + " {";
        bool first = true;
        for (const auto& v : n.children()) {
          out += (first ? " " : ", ") + v.get_string("name");
          first = false;
        }
        return out + (first ? "}" : " }");
      }
      case NodeKind::StateVariableDeclaration: {
        std::string out = type_name(n.child(0));
        std::string vis = n.get_string("visibility", "internal");
        if (vis != "internal") out += " " + vis;
        if (n.get_bool("constant")) out += " constant";
        out += " " + n.get_string("name");
        if (n.child_count() == 2) out += " = " + expression(n.child(1));
        return out + ";";
      }
      case NodeKind::FunctionDefinition:
        return function(n, depth);
      case NodeKind::ModifierDefinition:
        return "modifier " + n.get_string("name") +
               parameter_list(n.child(0)) + " " + block(n.child(1), depth);
      case NodeKind::EventDefinition:
        return "event " + n.get_string("name") + parameter_list(n.child(0)) +
               (n.get_bool("anonymous") ? " anonymous;" : ";");
      case NodeKind::UsingForDirective:
        return "using " + type_name(n.child(0)) + " for " +
               (n.child_count() == 2 ? type_name(n.child(1)) : "*") + ";";
      default:
        throw Error(ErrorCode::ArityViolation,
                    std::string(to_string(n.kind())) +
                        " cannot appear as a declaration");
    }
  }

  std::string contract(const AstNode& n, int depth) {
    std::string out =
        n.get_string("contractKind", "contract") + " " + n.get_string("name");
    std::size_t i = 0;
    auto children = n.children();
    for (; i < children.size() &&
           children[i].kind() == NodeKind::InheritanceSpecifier;
         ++i) {
      out += (i == 0 ? " is " : ", ") + invocation(children[i]);
    }
    out += " {\n";
    const AstNode* prev = nullptr;
    for (; i < children.size(); ++i) {
      const AstNode& m = children[i];
      if (prev && !(prev->kind() == m.kind() && one_line_member(m.kind()))) {
        out += "\n";
      }
      out += indent(depth + 1) + declaration(m, depth + 1) + "\n";
      prev = &m;
    }
    return out + indent(depth) + "}";
  }

  std::string function(const AstNode& n, int depth) {
    const std::string name = n.get_string("name");
    const std::string kind = n.get_string("kind");
    std::string out;
    if (kind == "constructor" ||
        (kind.empty() && n.get_bool("isConstructor") && name.empty())) {
      out = "constructor";
    } else if (kind == "fallback" || name.empty()) {
      out = "function ";
    } else {
      out = "function " + name;
    }
    out += parameter_list(n.child(0));
    std::string vis = n.get_string("visibility");
    if (!vis.empty()) out += " " + vis;
    // 0.4 "constant" functions carry stateMutability "view".
    std::string mut = n.get_string("stateMutability", "nonpayable");
    if (mut != "nonpayable") out += " " + mut;
    const AstNode* body = nullptr;
    for (std::size_t i = 2; i < n.child_count(); ++i) {
      const AstNode& c = n.child(i);
      if (c.kind() == NodeKind::ModifierInvocation) {
        out += " " + invocation(c);
      } else {
        body = &c;
      }
    }
    if (n.child(1).child_count() > 0) {
      out += " returns " + parameter_list(n.child(1));
    }
    return body ? out + " " + block(*body, depth) : out + ";";
  }

  std::string invocation(const AstNode& n) {
    check(n);
    std::string out = n.kind() == NodeKind::InheritanceSpecifier
                          ? type_name(n.child(0))
                          : expression(n.child(0));
    if (!n.get_bool("argumentsPresent")) return out;
    return out + "(" + arguments(n, 1) + ")";
  }

  std::string arguments(const AstNode& n, std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < n.child_count(); ++i) {
      if (i > from) out += ", ";
      out += expression(n.child(i));
    }
    return out;
  }

  std::string parameter_list(const AstNode& n) {
    check(n);
    std::string out = "(";
    for (std::size_t i = 0; i < n.child_count(); ++i) {
      if (i) out += ", ";
      out += variable(n.child(i));
    }
    return out + ")";
  }

  // Parameter, local or struct member without terminator or initializer.
  std::string variable(const AstNode& n) {
    check(n);
    std::string out;
    bool typed = n.child_count() > 0 && is_type_name(n.child(0).kind());
    out = typed ? type_name(n.child(0)) : "var";
    if (n.kind() == NodeKind::Parameter && n.get_bool("indexed")) {
      out += " indexed";
    }
    std::string loc = n.get_string("storageLocation", "default");
    if (loc != "default" && !loc.empty()) out += " " + loc;
    std::string name = n.get_string("name");
    if (!name.empty()) out += " " + name;
    return out;
  }

  std::string type_name(const AstNode& n) {
    check(n);
    switch (n.kind()) {
      case NodeKind::ElementaryTypeName: {
        std::string out = n.get_string("name");
        if (out == "address" && n.get_string("stateMutability") == "payable") {
          out += " payable";
        }
        return out;
      }
      case NodeKind::UserDefinedTypeName:
        return n.get_string("name");
      case NodeKind::MappingTypeName:
        return "mapping(" + type_name(n.child(0)) + " => " +
               type_name(n.child(1)) + ")";
      case NodeKind::ArrayTypeName:
        return type_name(n.child(0)) + "[" +
               (n.child_count() == 2 ? expression(n.child(1)) : "") + "]";
      case NodeKind::FunctionTypeName: {
        std::string out = "function " + parameter_list(n.child(0));
        std::string vis = n.get_string("visibility", "internal");
        if (vis != "internal") out += " " + vis;
        std::string mut = n.get_string("stateMutability", "nonpayable");
        if (mut != "nonpayable") out += " " + mut;
        if (n.child(1).child_count() > 0) {
          out += " returns " + parameter_list(n.child(1));
        }
        return out;
      }
      default:
        throw Error(ErrorCode::ArityViolation,
                    std::string(to_string(n.kind())) + " is not a type name");
    }
  }

  std::string block(const AstNode& n, int depth) {
    check(n);
    std::string out = "{\n";
    for (const auto& s : n.children()) {
      out += indent(depth + 1) + statement(s, depth + 1) + "\n";
    }
    return out + indent(depth) + "}";
  }

  std::string simple_statement(const AstNode& n) {
    if (n.kind() == NodeKind::VariableDeclarationStatement) {
      return declaration_statement(n);
    }
    if (n.kind() == NodeKind::ExpressionStatement) {
      return expression(n.child(0));
    }
    throw Error(ErrorCode::ArityViolation,
                std::string(to_string(n.kind())) +
                    " cannot appear in a for-loop header");
  }

  std::string declaration_statement(const AstNode& n) {
    check(n);
    std::size_t decls = 0;
    while (decls < n.child_count() &&
           n.child(decls).kind() == NodeKind::VariableDeclaration) {
      ++decls;
    }
    std::string slots = n.get_string("declarationSlots");
    std::string out;
    if (decls == 1 && slots.empty()) {
      out = variable(n.child(0));
    } else {
      bool untyped = true;
      for (std::size_t i = 0; i < decls; ++i) {
        untyped &= n.child(i).child_count() == 0 ||
                   !is_type_name(n.child(i).child(0).kind());
      }
      if (slots.empty()) slots.assign(decls, 'x');
      std::size_t next = 0;
      std::string list;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (s) list += ", ";
        if (slots[s] == 'x') {
          const AstNode& d = n.child(next++);
          list += untyped ? d.get_string("name") : variable(d);
        }
      }
      out = (untyped ? "var (" : "(") + list + ")";
    }
    if (decls < n.child_count()) out += " = " + expression(n.child(decls));
    return out;
  }

  std::string statement(const AstNode& n, int depth) {
    check(n);
    switch (n.kind()) {
      case NodeKind::Block:
        return block(n, depth);
      case NodeKind::IfStatement: {
        std::string out = "if (" + expression(n.child(0)) + ") " +
                          statement(n.child(1), depth);
        if (n.child_count() == 3) {
          out += n.child(1).kind() == NodeKind::Block
                     ? " else "
                     : "\n" + indent(depth) + "else ";
          out += statement(n.child(2), depth);
        }
        return out;
      }
      case NodeKind::WhileStatement:
        return "while (" + expression(n.child(0)) + ") " +
               statement(n.child(1), depth);
      case NodeKind::DoWhileStatement: {
        const AstNode& body = n.child(1);
        return "do " + statement(body, depth) +
               (body.kind() == NodeKind::Block ? " " : "\n" + indent(depth)) +
               "while (" + expression(n.child(0)) + ");";
      }
      case NodeKind::ForStatement: {
        std::size_t i = 0;
        std::string header = "for (";
        if (n.get_bool("hasInitialization")) {
          header += simple_statement(n.child(i++));
        }
        header += ";";
        if (n.get_bool("hasCondition")) {
          header += " " + expression(n.child(i++));
        }
        header += ";";
        if (n.get_bool("hasLoopExpression")) {
          header += " " + simple_statement(n.child(i++));
        }
        return header + ") " + statement(n.child(i), depth);
      }
      case NodeKind::Return:
        return n.child_count() ? "return " + expression(n.child(0)) + ";"
                               : "return;";
      case NodeKind::Break: return "break;";
      case NodeKind::Continue: return "continue;";
      case NodeKind::Throw: return "throw;";
      case NodeKind::PlaceholderStatement: return "_;";
      case NodeKind::EmitStatement:
        return "emit " + expression(n.child(0)) + ";";
      case NodeKind::ExpressionStatement:
        return expression(n.child(0)) + ";";
      case NodeKind::VariableDeclarationStatement:
        return declaration_statement(n) + ";";
      case NodeKind::InlineAssembly:
        return "assembly " + n.get_string("operations");
      default:
        throw Error(ErrorCode::ArityViolation,
                    std::string(to_string(n.kind())) + " is not a statement");
    }
  }

  std::string operand(const AstNode& child, int required) {
    std::string text = expression(child);
    return precedence(child) < required ? "(" + text + ")" : text;
  }

  std::string literal(const AstNode& n) {
    const std::string kind = n.get_string("kind");
    if (kind == "string" || kind == "unicodeString") {
      if (!n.has("value") && n.has("hexValue")) {
        return "hex\"" + n.get_string("hexValue") + "\"";
      }
      return "\"" + escape_string(n.get_string("value")) + "\"";
    }
    if (kind == "hexString") return "hex\"" + n.get_string("hexValue") + "\"";
    std::string out = n.get_string("value");
    std::string unit = n.get_string("subdenomination");
    if (!unit.empty()) out += " " + unit;
    return out;
  }

  std::string expression(const AstNode& n) {
    check(n);
    switch (n.kind()) {
      case NodeKind::Assignment:
        return operand(n.child(0), kAssignment + 1) + " " +
               n.get_string("operator") + " " +
               operand(n.child(1), kAssignment);
      case NodeKind::BinaryOperation: {
        int p = binary_precedence(n.get_string("operator"));
        return operand(n.child(0), p) + " " + n.get_string("operator") + " " +
               operand(n.child(1), p + 1);
      }
      case NodeKind::UnaryOperation: {
        const std::string op = n.get_string("operator");
        if (!n.get_bool("prefix", true)) {
          return operand(n.child(0), kPostfix) + op;
        }
        std::string inner = operand(n.child(0), kPrefix);
        bool word = op == "delete";
        bool glue = !inner.empty() && (inner[0] == '-' || inner[0] == '+') &&
                    (op == "-" || op == "--" || op == "+" || op == "++");
        return op + (word || glue ? " " : "") + inner;
      }
      case NodeKind::Conditional:
        return operand(n.child(0), kConditional + 1) + " ? " +
               operand(n.child(1), kConditional) + " : " +
               operand(n.child(2), kConditional);
      case NodeKind::TupleExpression: {
        bool inline_array = n.get_bool("isInlineArray");
        std::string slots = n.get_string("componentSlots");
        if (slots.empty()) slots.assign(n.child_count(), 'x');
        std::string out = inline_array ? "[" : "(";
        std::size_t next = 0;
        for (std::size_t s = 0; s < slots.size(); ++s) {
          if (s) out += ", ";
          if (slots[s] == 'x') out += expression(n.child(next++));
        }
        return out + (inline_array ? "]" : ")");
      }
      case NodeKind::IndexAccess:
        return operand(n.child(0), kPostfix) + "[" +
               (n.child_count() == 2 ? expression(n.child(1)) : "") + "]";
      case NodeKind::MemberAccess:
        return operand(n.child(0), kPostfix) + "." + n.get_string("memberName");
      case NodeKind::FunctionCall: {
        std::string callee = operand(n.child(0), kPostfix);
        auto names = n.get_strings("names");
        if (names.empty()) return callee + "(" + arguments(n, 1) + ")";
        std::string out = callee + "({";
        for (std::size_t i = 1; i < n.child_count(); ++i) {
          if (i > 1) out += ", ";
          out += (i - 1 < names.size() ? names[i - 1] : std::string("?")) +
                 ": " + expression(n.child(i));
        }
        return out + "})";
      }
      case NodeKind::NewExpression:
        return "new " + type_name(n.child(0));
      case NodeKind::Identifier:
        return n.get_string("name");
      case NodeKind::ElementaryTypeNameExpression:
        return n.get_string("typeName");
      case NodeKind::Literal:
        return literal(n);
      default:
        if (is_type_name(n.kind())) return type_name(n);
        throw Error(ErrorCode::ArityViolation,
                    std::string(to_string(n.kind())) + " is not an expression");
    }
  }

  const FormatConfig& fmt_;
};

std::string with_newlines(std::string text, const std::string& newline) {
  if (newline == "\n") return text;
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '\n') out += newline;
    else out += c;
  }
  return out;
}

}  // namespace

int precedence(const AstNode& n) {
  switch (n.kind()) {
    case NodeKind::Assignment: return kAssignment;
    case NodeKind::Conditional: return kConditional;
    case NodeKind::BinaryOperation:
      return binary_precedence(n.get_string("operator"));
    case NodeKind::UnaryOperation:
      return n.get_bool("prefix", true) ? kPrefix : kPostfix;
    case NodeKind::IndexAccess:
    case NodeKind::MemberAccess:
    case NodeKind::FunctionCall:
      return kPostfix;
    default:
      return kPrimary;
  }
}

std::string emit_node(const AstNode& node, const FormatConfig& fmt) {
  if (fmt.indent_width < 0) {
    throw Error(ErrorCode::InvalidRequest, "indent width must be >= 0");
  }
  return with_newlines(Emitter(fmt).any(node), fmt.newline);
}

std::string emit_source(const SourceUnit& unit, const FormatConfig& fmt) {
  return emit_node(unit.root(), fmt);
}

}  // namespace sif
