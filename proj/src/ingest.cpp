#include "sif/ingest.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sif {
namespace {

using json = nlohmann::json;

bool is_node(const json& j) {
  return j.is_object() && j.contains("nodeType") && j["nodeType"].is_string();
}

// Node-valued keys the converter consumes, per compiler node type. Anything
// else holding nodes is schema drift and is noted on the unit.
const std::map<std::string, std::set<std::string>, std::less<>>& child_keys() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys = {
      {"SourceUnit", {"nodes"}},
      {"ContractDefinition", {"baseContracts", "nodes"}},
      {"InheritanceSpecifier", {"baseName", "arguments"}},
      {"StructDefinition", {"members"}},
      {"EnumDefinition", {"members"}},
      {"VariableDeclaration", {"typeName", "value"}},
      {"FunctionDefinition",
       {"parameters", "returnParameters", "modifiers", "body"}},
      {"ModifierDefinition", {"parameters", "body"}},
      {"ModifierInvocation", {"modifierName", "arguments"}},
      {"EventDefinition", {"parameters"}},
      {"UsingForDirective", {"libraryName", "typeName"}},
      {"ParameterList", {"parameters"}},
      {"Block", {"statements"}},
      {"IfStatement", {"condition", "trueBody", "falseBody"}},
      {"WhileStatement", {"condition", "body"}},
      {"DoWhileStatement", {"condition", "body"}},
      {"ForStatement",
       {"initializationExpression", "condition", "loopExpression", "body"}},
      {"Return", {"expression"}},
      {"EmitStatement", {"eventCall"}},
      {"ExpressionStatement", {"expression"}},
      {"VariableDeclarationStatement", {"declarations", "initialValue"}},
      {"Assignment", {"leftHandSide", "rightHandSide"}},
      {"BinaryOperation", {"leftExpression", "rightExpression"}},
      {"UnaryOperation", {"subExpression"}},
      {"Conditional", {"condition", "trueExpression", "falseExpression"}},
      {"TupleExpression", {"components"}},
      {"IndexAccess", {"baseExpression", "indexExpression"}},
      {"MemberAccess", {"expression"}},
      {"FunctionCall", {"expression", "arguments"}},
      {"NewExpression", {"typeName"}},
      {"FunctionTypeName", {"parameterTypes", "returnParameterTypes"}},
      {"Mapping", {"keyType", "valueType"}},
      {"ArrayTypeName", {"baseType", "length"}},
  };
  return keys;
}

bool holds_nodes(const json& v) {
  if (is_node(v)) return true;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (is_node(e)) return true;
    }
  }
  return false;
}

std::optional<Span> parse_span(const json& j) {
  auto it = j.find("src");
  if (it == j.end() || !it->is_string()) return std::nullopt;
  std::int64_t o = 0, l = 0, f = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(it->get<std::string>());
  if (!(in >> o >> c1 >> l >> c2 >> f) || c1 != ':' || c2 != ':') {
    return std::nullopt;
  }
  return Span{o, l, f};
}

enum class Context { Plain, Contract, Parameters };

class Converter {
 public:
  Converter(const LoadOptions& options, std::vector<std::string>& notes)
      : options_(options), notes_(notes) {}

  AstNode convert_unit(const json& j) {
    if (!is_node(j) || j["nodeType"] != "SourceUnit") {
      throw Error(ErrorCode::ParseError,
                  "document root is not a SourceUnit node");
    }
    if (auto it = j.find("absolutePath"); it != j.end() && it->is_string()) {
      unit_path_ = it->get<std::string>();
    }
    return convert(j, Context::Plain);
  }

 private:
  const json& field(const json& j, std::string_view key) const {
    auto it = j.find(key);
    if (it == j.end()) {
      throw Error(ErrorCode::ParseError,
                  j["nodeType"].get<std::string>() + " node " +
                      id_text(j) + " lacks '" + std::string(key) + "'");
    }
    return *it;
  }

  static std::string id_text(const json& j) {
    auto it = j.find("id");
    return it != j.end() && it->is_number_integer()
               ? "(id " + std::to_string(it->get<std::int64_t>()) + ")"
               : "(no id)";
  }

  static const json* optional_node(const json& j, std::string_view key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return nullptr;
    return &*it;
  }

  static void copy_string(const json& j, std::string_view key, AstNode& n,
                          std::string_view as = {}) {
    auto it = j.find(key);
    if (it != j.end() && it->is_string()) {
      n.set(as.empty() ? key : as, it->get<std::string>());
    }
  }

  static void copy_bool(const json& j, std::string_view key, AstNode& n) {
    auto it = j.find(key);
    if (it != j.end() && it->is_boolean()) n.set(key, it->get<bool>());
  }

  static void copy_ref(const json& j, std::string_view key, AstNode& n) {
    auto it = j.find(key);
    if (it != j.end() && it->is_number_integer()) {
      n.set(key, it->get<std::int64_t>());
    }
  }

  static std::optional<std::string> type_string(const json& j) {
    auto it = j.find("typeDescriptions");
    if (it == j.end() || !it->is_object()) return std::nullopt;
    auto ts = it->find("typeString");
    if (ts == it->end() || !ts->is_string()) return std::nullopt;
    return ts->get<std::string>();
  }

  static void copy_type(const json& j, AstNode& n, bool with_signedness) {
    auto ts = type_string(j);
    if (!ts) return;
    n.set("typeString", *ts);
    if (with_signedness) n.set("signedness", std::string(signedness_of(*ts)));
  }

  void add_children(AstNode& n, const json& list, Context ctx = Context::Plain) {
    if (list.is_null()) return;
    if (!list.is_array()) {
      throw Error(ErrorCode::ParseError, "expected a node list in " +
                                             std::string(to_string(n.kind())));
    }
    for (const auto& e : list) {
      if (e.is_null()) {
        throw Error(ErrorCode::ParseError,
                    "unexpected empty slot among children of " +
                        std::string(to_string(n.kind())));
      }
      n.add_child(convert(e, ctx));
    }
  }

  void add_optional(AstNode& n, const json& j, std::string_view key,
                    Context ctx = Context::Plain) {
    if (const json* c = optional_node(j, key)) n.add_child(convert(*c, ctx));
  }

  // Lists with holes ("(, b) = f()", "var (a, , c) = ...") keep present
  // entries as children and record the layout as a string of 'x'/'_'.
  void add_slotted(AstNode& n, const json& list, std::string_view slot_field) {
    std::string slots;
    bool holes = false;
    for (const auto& e : list) {
      if (e.is_null()) {
        slots += '_';
        holes = true;
      } else {
        slots += 'x';
        n.add_child(convert(e, Context::Plain));
      }
    }
    if (holes) n.set(slot_field, slots);
  }

  std::vector<std::string> import_aliases(const json& j) {
    const json& aliases = field(j, "symbolAliases");
    if (!aliases.is_array() || aliases.empty()) return {};
    auto span = parse_span(j);
    std::string text;
    std::filesystem::path where;
    if (span && options_.source_dir) {
      for (auto candidate :
           {*options_.source_dir / unit_path_,
            *options_.source_dir /
                std::filesystem::path(unit_path_).filename()}) {
        std::ifstream in(candidate, std::ios::binary);
        if (!in) continue;
        std::string source((std::istreambuf_iterator<char>(in)), {});
        if (span->offset + span->length <=
            static_cast<std::int64_t>(source.size())) {
          text = source.substr(span->offset, span->length);
          where = candidate;
          break;
        }
      }
    }
    if (text.empty()) {
      throw Error(ErrorCode::ParseError,
                  "import with symbol aliases " + id_text(j) +
                      " needs the source of '" + unit_path_ +
                      "' next to the AST document to recover the imported "
                      "names");
    }
    auto open = text.find('{');
    auto close = text.find('}', open == std::string::npos ? 0 : open);
    if (open == std::string::npos || close == std::string::npos) {
      throw Error(ErrorCode::ParseError,
                  "source at " + where.string() + " does not match import " +
                      id_text(j));
    }
    std::vector<std::string> out;
    std::stringstream list(text.substr(open + 1, close - open - 1));
    std::string item;
    while (std::getline(list, item, ',')) {
      std::istringstream words(item);
      std::string foreign, as, local;
      words >> foreign >> as >> local;
      out.push_back(as == "as" ? foreign + " as " + local : foreign);
    }
    if (out.size() != aliases.size()) {
      throw Error(ErrorCode::ParseError,
                  "source at " + where.string() + " lists " +
                      std::to_string(out.size()) + " imported names, AST has " +
                      std::to_string(aliases.size()));
    }
    return out;
  }

  void note_drift(const json& j, std::string_view type) {
    const auto& known = child_keys();
    auto it = known.find(type);
    for (const auto& [key, value] : j.items()) {
      if (key == "typeName" && value.is_string()) continue;
      if (!holds_nodes(value)) continue;
      if (it != known.end() && it->second.count(key)) continue;
      notes_.push_back("schema drift: " + std::string(type) + "." + key +
                       " holds nodes the toolkit does not model; ignored");
    }
  }

  AstNode convert(const json& j, Context ctx) {
    if (!is_node(j)) {
      throw Error(ErrorCode::ParseError, "expected an AST node object");
    }
    const std::string type = j["nodeType"].get<std::string>();
    NodeKind kind;
    if (type == "Mapping") {
      kind = NodeKind::MappingTypeName;
    } else if (type == "VariableDeclaration") {
      bool state = j.value("stateVariable", false);
      kind = ctx == Context::Parameters          ? NodeKind::Parameter
             : state && ctx == Context::Contract ? NodeKind::StateVariableDeclaration
                                                 : NodeKind::VariableDeclaration;
    } else {
      auto k = node_kind_from_string(type);
      if (!k || type == "StateVariableDeclaration" || type == "Parameter" ||
          type == "MappingTypeName") {
        throw Error(ErrorCode::UnknownKind,
                    "unknown node kind '" + type + "' " + id_text(j));
      }
      kind = *k;
    }
    const json& id = field(j, "id");
    if (!id.is_number_integer()) {
      throw Error(ErrorCode::ParseError, type + " node has a non-integer id");
    }
    AstNode n(id.get<std::int64_t>(), kind);
    n.set_span(parse_span(j));
    note_drift(j, type);
    fill(n, j, type);
    if (auto problem = check_layout(n)) {
      throw Error(ErrorCode::ArityViolation, *problem);
    }
    return n;
  }

  void fill(AstNode& n, const json& j, const std::string& type) {
    switch (n.kind()) {
      case NodeKind::SourceUnit:
        copy_string(j, "absolutePath", n);
        add_children(n, field(j, "nodes"));
        break;
      case NodeKind::PragmaDirective:
        n.set("literals", field(j, "literals").get<std::vector<std::string>>());
        break;
      case NodeKind::ImportDirective:
        copy_string(j, "file", n);
        copy_string(j, "absolutePath", n);
        copy_string(j, "unitAlias", n);
        n.set("symbolAliases", import_aliases(j));
        break;
      case NodeKind::ContractDefinition:
        copy_string(j, "name", n);
        copy_string(j, "contractKind", n);
        add_children(n, j.value("baseContracts", json::array()));
        add_children(n, field(j, "nodes"), Context::Contract);
        break;
      case NodeKind::InheritanceSpecifier:
      case NodeKind::ModifierInvocation: {
        bool inherit = n.kind() == NodeKind::InheritanceSpecifier;
        n.add_child(convert(field(j, inherit ? "baseName" : "modifierName"),
                            Context::Plain));
        const json* args = optional_node(j, "arguments");
        n.set("argumentsPresent", args != nullptr);
        if (args) add_children(n, *args);
        break;
      }
      case NodeKind::StructDefinition:
      case NodeKind::EnumDefinition:
        copy_string(j, "name", n);
        add_children(n, field(j, "members"));
        break;
      case NodeKind::EnumValue:
        copy_string(j, "name", n);
        break;
      case NodeKind::StateVariableDeclaration:
      case NodeKind::VariableDeclaration:
      case NodeKind::Parameter:
        copy_string(j, "name", n);
        copy_string(j, "storageLocation", n);
        copy_ref(j, "scope", n);
        copy_type(j, n, true);
        if (n.kind() == NodeKind::Parameter) {
          copy_bool(j, "indexed", n);
        } else {
          copy_string(j, "visibility", n);
          copy_bool(j, "constant", n);
        }
        add_optional(n, j, "typeName");
        if (n.kind() != NodeKind::Parameter) add_optional(n, j, "value");
        break;
      case NodeKind::FunctionDefinition:
        copy_string(j, "name", n);
        copy_string(j, "kind", n);
        copy_bool(j, "isConstructor", n);
        copy_bool(j, "isDeclaredConst", n);
        copy_string(j, "visibility", n);
        copy_string(j, "stateMutability", n);
        copy_ref(j, "scope", n);
        n.add_child(convert(field(j, "parameters"), Context::Plain));
        n.add_child(convert(field(j, "returnParameters"), Context::Plain));
        add_children(n, j.value("modifiers", json::array()));
        add_optional(n, j, "body");
        break;
      case NodeKind::ModifierDefinition:
        copy_string(j, "name", n);
        copy_string(j, "visibility", n);
        n.add_child(convert(field(j, "parameters"), Context::Plain));
        n.add_child(convert(field(j, "body"), Context::Plain));
        break;
      case NodeKind::EventDefinition:
        copy_string(j, "name", n);
        copy_bool(j, "anonymous", n);
        n.add_child(convert(field(j, "parameters"), Context::Plain));
        break;
      case NodeKind::UsingForDirective:
        n.add_child(convert(field(j, "libraryName"), Context::Plain));
        add_optional(n, j, "typeName");
        break;
      case NodeKind::ParameterList:
        add_children(n, field(j, "parameters"), Context::Parameters);
        break;
      case NodeKind::Block:
        add_children(n, field(j, "statements"));
        break;
      case NodeKind::IfStatement:
        n.add_child(convert(field(j, "condition"), Context::Plain));
        // A missing then-branch is a shape error, not a malformed document.
        if (!optional_node(j, "trueBody")) {
          throw Error(ErrorCode::ArityViolation,
                      "IfStatement " + id_text(j) + " has no then-branch");
        }
        n.add_child(convert(field(j, "trueBody"), Context::Plain));
        add_optional(n, j, "falseBody");
        break;
      case NodeKind::WhileStatement:
      case NodeKind::DoWhileStatement:
        n.add_child(convert(field(j, "condition"), Context::Plain));
        n.add_child(convert(field(j, "body"), Context::Plain));
        break;
      case NodeKind::ForStatement:
        n.set("hasInitialization",
              optional_node(j, "initializationExpression") != nullptr);
        n.set("hasCondition", optional_node(j, "condition") != nullptr);
        n.set("hasLoopExpression",
              optional_node(j, "loopExpression") != nullptr);
        add_optional(n, j, "initializationExpression");
        add_optional(n, j, "condition");
        add_optional(n, j, "loopExpression");
        n.add_child(convert(field(j, "body"), Context::Plain));
        break;
      case NodeKind::Return:
        copy_ref(j, "functionReturnParameters", n);
        add_optional(n, j, "expression");
        break;
      case NodeKind::EmitStatement:
        n.add_child(convert(field(j, "eventCall"), Context::Plain));
        break;
      case NodeKind::ExpressionStatement:
        n.add_child(convert(field(j, "expression"), Context::Plain));
        break;
      case NodeKind::VariableDeclarationStatement:
        add_slotted(n, field(j, "declarations"), "declarationSlots");
        add_optional(n, j, "initialValue");
        break;
      case NodeKind::InlineAssembly:
        copy_string(j, "operations", n);
        break;
      case NodeKind::Assignment:
      case NodeKind::BinaryOperation: {
        bool assign = n.kind() == NodeKind::Assignment;
        copy_string(j, "operator", n);
        copy_type(j, n, true);
        n.add_child(convert(field(j, assign ? "leftHandSide" : "leftExpression"),
                            Context::Plain));
        n.add_child(convert(
            field(j, assign ? "rightHandSide" : "rightExpression"),
            Context::Plain));
        break;
      }
      case NodeKind::UnaryOperation:
        copy_string(j, "operator", n);
        copy_bool(j, "prefix", n);
        copy_type(j, n, true);
        n.add_child(convert(field(j, "subExpression"), Context::Plain));
        break;
      case NodeKind::Conditional:
        copy_type(j, n, false);
        n.add_child(convert(field(j, "condition"), Context::Plain));
        n.add_child(convert(field(j, "trueExpression"), Context::Plain));
        n.add_child(convert(field(j, "falseExpression"), Context::Plain));
        break;
      case NodeKind::TupleExpression:
        copy_bool(j, "isInlineArray", n);
        copy_type(j, n, false);
        add_slotted(n, field(j, "components"), "componentSlots");
        break;
      case NodeKind::IndexAccess:
        copy_type(j, n, false);
        n.add_child(convert(field(j, "baseExpression"), Context::Plain));
        add_optional(n, j, "indexExpression");
        break;
      case NodeKind::MemberAccess:
        copy_string(j, "memberName", n);
        copy_ref(j, "referencedDeclaration", n);
        copy_type(j, n, false);
        n.add_child(convert(field(j, "expression"), Context::Plain));
        break;
      case NodeKind::FunctionCall:
        copy_string(j, "kind", n);
        if (auto it = j.find("names"); it != j.end() && it->is_array() &&
                                        !it->empty()) {
          n.set("names", it->get<std::vector<std::string>>());
        }
        copy_type(j, n, false);
        n.add_child(convert(field(j, "expression"), Context::Plain));
        add_children(n, field(j, "arguments"));
        break;
      case NodeKind::NewExpression:
        copy_type(j, n, false);
        n.add_child(convert(field(j, "typeName"), Context::Plain));
        break;
      case NodeKind::Identifier:
        copy_string(j, "name", n);
        copy_ref(j, "referencedDeclaration", n);
        copy_type(j, n, true);
        break;
      case NodeKind::ElementaryTypeNameExpression: {
        const json& t = field(j, "typeName");
        // 0.6+ wraps the name in an ElementaryTypeName node.
        n.set("typeName", t.is_string() ? t.get<std::string>()
                                        : t.value("name", std::string()));
        copy_type(j, n, false);
        break;
      }
      case NodeKind::Literal:
        copy_string(j, "kind", n);
        copy_string(j, "value", n);
        copy_string(j, "hexValue", n);
        copy_string(j, "subdenomination", n);
        copy_type(j, n, false);
        break;
      case NodeKind::ElementaryTypeName: {
        copy_string(j, "name", n);
        copy_string(j, "stateMutability", n);
        copy_type(j, n, false);
        auto ts = type_string(j);
        n.set("signedness", std::string(signedness_of(
                                ts ? *ts : n.get_string("name"))));
        break;
      }
      case NodeKind::UserDefinedTypeName:
        copy_string(j, "name", n);
        copy_ref(j, "referencedDeclaration", n);
        copy_type(j, n, false);
        break;
      case NodeKind::FunctionTypeName:
        copy_string(j, "visibility", n);
        copy_string(j, "stateMutability", n);
        copy_type(j, n, false);
        n.add_child(convert(field(j, "parameterTypes"), Context::Plain));
        n.add_child(convert(field(j, "returnParameterTypes"), Context::Plain));
        break;
      case NodeKind::MappingTypeName:
        copy_type(j, n, false);
        n.add_child(convert(field(j, "keyType"), Context::Plain));
        n.add_child(convert(field(j, "valueType"), Context::Plain));
        break;
      case NodeKind::ArrayTypeName:
        copy_type(j, n, false);
        n.add_child(convert(field(j, "baseType"), Context::Plain));
        add_optional(n, j, "length");
        break;
      case NodeKind::Break:
      case NodeKind::Continue:
      case NodeKind::Throw:
      case NodeKind::PlaceholderStatement:
        break;
    }
    (void)type;
  }

  const LoadOptions& options_;
  std::vector<std::string>& notes_;
  std::string unit_path_;
};

bool section_matches(const std::string& section, const std::string& wanted) {
  if (wanted.empty()) return false;
  namespace fs = std::filesystem;
  return section == wanted ||
         fs::path(section).filename() == fs::path(wanted).filename();
}

// Splits the compiler's console listing into (name, json text) sections.
std::vector<std::pair<std::string, std::string>> console_sections(
    std::string_view text) {
  std::vector<std::pair<std::string, std::string>> sections;
  const std::string_view marker = "\n======= ";
  std::size_t pos = text.find(marker);
  while (pos != std::string_view::npos) {
    std::size_t name_start = pos + marker.size();
    std::size_t name_end = text.find(" =======", name_start);
    if (name_end == std::string_view::npos) break;
    std::size_t body_start = text.find('\n', name_end);
    if (body_start == std::string_view::npos) body_start = text.size();
    std::size_t next = text.find(marker, body_start);
    std::string_view body =
        text.substr(body_start, next == std::string_view::npos
                                    ? std::string_view::npos
                                    : next - body_start);
    sections.emplace_back(std::string(text.substr(name_start, name_end - name_start)),
                          std::string(body));
    pos = next;
  }
  return sections;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                std::string("malformed AST document: ") + e.what());
  }
}

template <typename Sections>
const json* pick(const Sections& sections, const std::string& wanted,
                 std::string& chosen) {
  const json* only = nullptr;
  std::size_t count = 0;
  for (const auto& [name, j] : sections) {
    ++count;
    if (section_matches(name, wanted)) {
      chosen = name;
      return &j;
    }
    only = &j;
    chosen = name;
  }
  if (count == 1 && wanted.empty()) return only;
  throw Error(ErrorCode::ParseError,
              count == 0 ? "document holds no source units"
              : wanted.empty()
                  ? "document holds " + std::to_string(count) +
                        " source units; name the one to load"
                  : "document has no source unit named '" + wanted + "'");
}

// The compact AST numbers built-ins (msg, require, now, ...) with ids past
// the unit's own nodes. In a unit without imports every unresolvable
// reference is such a built-in and is negated, the convention later
// compilers use, so it can never alias a synthesized node. Fresh ids are
// reserved past every positive reference for the same reason.
void normalize_references(SourceUnit& unit) {
  auto ids = collect_ids(unit.root());
  bool has_imports = false;
  for (const auto& top : unit.root().children()) {
    has_imports |= top.kind() == NodeKind::ImportDirective;
  }
  NodeId top_ref = 0;
  unit.root().for_each_mut([&](AstNode& n) {
    if (n.kind() != NodeKind::Identifier && n.kind() != NodeKind::MemberAccess &&
        n.kind() != NodeKind::UserDefinedTypeName) {
      return;
    }
    auto ref = n.get_int("referencedDeclaration");
    if (!ref || *ref <= 0) return;
    if (!has_imports && !ids.count(*ref)) {
      n.set("referencedDeclaration", -*ref);
    } else {
      top_ref = std::max(top_ref, *ref);
    }
  });
  unit.reserve_ids_above(top_ref);
}

}  // namespace

SourceUnit load_ast(std::string_view document, const LoadOptions& options) {
  std::size_t first = document.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "empty AST document");
  }
  json root;
  if (document[first] == '{' || document[first] == '[') {
    root = parse_json(document);
    if (root.is_object() && root.contains("sources") && !is_node(root)) {
      std::vector<std::pair<std::string, json>> sections;
      for (const auto& [name, entry] : root["sources"].items()) {
        if (entry.contains("ast")) sections.emplace_back(name, entry["ast"]);
        else if (entry.contains("AST")) sections.emplace_back(name, entry["AST"]);
      }
      std::string chosen;
      json picked = *pick(sections, options.source_name, chosen);
      root = std::move(picked);
    }
  } else {
    auto sections = console_sections(document);
    std::vector<std::pair<std::string, json>> parsed;
    for (auto& [name, body] : sections) parsed.emplace_back(name, parse_json(body));
    std::string chosen;
    json picked = *pick(parsed, options.source_name, chosen);
    root = std::move(picked);
  }

  std::vector<std::string> notes;
  Converter converter(options, notes);
  AstNode tree = converter.convert_unit(root);
  SourceUnit unit(std::move(tree), options.origin);
  for (auto& note : notes) unit.add_note(std::move(note));
  normalize_references(unit);

  for (const auto& d : validate(unit)) {
    if (d.severity == Diagnostic::Severity::Error) {
      throw Error(ErrorCode::ValidationFailure, d.message);
    }
  }
  return unit;
}

SourceUnit load_ast_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot read " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), {});
  LoadOptions options;
  options.origin = path.string();
  options.source_dir = path.parent_path().empty()
                           ? std::filesystem::path(".")
                           : path.parent_path();
  return load_ast(text, options);
}

std::string to_string(const Diagnostic& d) {
  std::string out =
      d.severity == Diagnostic::Severity::Error ? "error: " : "warning: ";
  return out + d.message;
}

std::vector<Diagnostic> validate(const SourceUnit& unit) {
  std::vector<Diagnostic> out;
  const AstNode& root = unit.root();
  auto error = [&](std::string msg, std::optional<NodeId> id = std::nullopt) {
    out.push_back({Diagnostic::Severity::Error, std::move(msg), id});
  };

  if (root.kind() != NodeKind::SourceUnit) {
    error("root is " + std::string(to_string(root.kind())) +
          ", not SourceUnit");
  }
  for (const auto& top : root.children()) {
    if (top.kind() != NodeKind::PragmaDirective &&
        top.kind() != NodeKind::ImportDirective &&
        top.kind() != NodeKind::ContractDefinition) {
      error(std::string(to_string(top.kind())) + " (id " +
                std::to_string(top.id()) + ") cannot appear at top level",
            top.id());
    }
  }

  std::map<NodeId, int> seen;
  bool has_imports = false;
  std::function<void(const AstNode&, const AstNode*)> check =
      [&](const AstNode& n, const AstNode* parent) {
        if (++seen[n.id()] == 2) {
          error("duplicate node id " + std::to_string(n.id()), n.id());
        }
        if (parent && n.kind() == NodeKind::SourceUnit) {
          error("nested SourceUnit (id " + std::to_string(n.id()) + ")", n.id());
        }
        if (n.kind() == NodeKind::ImportDirective) has_imports = true;
        if (auto problem = check_layout(n)) error(*problem, n.id());
        if (n.kind() == NodeKind::Parameter &&
            (!parent || parent->kind() != NodeKind::ParameterList)) {
          error("Parameter (id " + std::to_string(n.id()) +
                    ") outside a parameter list",
                n.id());
        }
        if (n.kind() == NodeKind::StateVariableDeclaration &&
            (!parent || parent->kind() != NodeKind::ContractDefinition)) {
          error("state variable (id " + std::to_string(n.id()) +
                    ") outside a contract",
                n.id());
        }
        for (const auto& c : n.children()) check(c, &n);
      };
  check(root, nullptr);

  if (!has_imports) {
    root.for_each([&](const AstNode& n) {
      if (n.kind() != NodeKind::Identifier &&
          n.kind() != NodeKind::MemberAccess &&
          n.kind() != NodeKind::UserDefinedTypeName) {
        return;
      }
      auto ref = n.get_int("referencedDeclaration");
      // Negative ids denote built-ins (msg, require, ...).
      if (!ref || *ref < 0 || seen.count(*ref)) return;
      std::string label = n.kind() == NodeKind::MemberAccess
                              ? n.get_string("memberName")
                              : n.get_string("name");
      out.push_back({Diagnostic::Severity::Warning,
                     "dangling reference: " + std::string(to_string(n.kind())) +
                         " '" + label + "' (id " + std::to_string(n.id()) +
                         ") refers to missing declaration " +
                         std::to_string(*ref),
                     n.id()});
    });
  }
  return out;
}

}  // namespace sif
