#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sif/ingest.hpp"

namespace sif::test {
namespace fs = std::filesystem;
using nlohmann::json;

fs::path corpus_dir() { return fs::path(SIF_FIXTURE_DIR) / "corpus"; }

std::vector<std::string> corpus_stems() {
  std::vector<std::string> stems;
  const std::string suffix = ".ast.json";
  for (const auto& entry : fs::directory_iterator(corpus_dir())) {
    std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      stems.push_back(name.substr(0, name.size() - suffix.size()));
    }
  }
  std::sort(stems.begin(), stems.end());
  return stems;
}

fs::path ast_path(const std::string& stem) {
  return corpus_dir() / (stem + ".ast.json");
}

fs::path sol_path(const std::string& stem) {
  return corpus_dir() / (stem + ".sol");
}

SourceUnit load_fixture(const std::string& stem) {
  return load_ast_file(ast_path(stem));
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool have_compiler() {
  static const bool available = compiler_available();
  return available;
}

json raw_unit(const std::string& stem) {
  return json::parse(read_text(ast_path(stem)));
}

namespace {

bool is_node(const json& j) { return j.is_object() && j.contains("nodeType"); }

// Pre-order over every node object below `j`, parents before children.
void each_node(const json& j, const std::function<void(const json&)>& fn) {
  if (is_node(j)) fn(j);
  if (j.is_object() || j.is_array()) {
    for (const auto& v : j) each_node(v, fn);
  }
}

std::optional<std::int64_t> ref_of(const json& j) {
  if (!j.is_object()) return std::nullopt;
  auto it = j.find("referencedDeclaration");
  if (it == j.end() || !it->is_number_integer()) return std::nullopt;
  return it->get<std::int64_t>();
}

}  // namespace

std::size_t raw_count(const json& unit, const std::set<std::string>& types) {
  std::size_t n = 0;
  each_node(unit, [&](const json& node) {
    n += types.count(node["nodeType"].get<std::string>());
  });
  return n;
}

std::set<std::pair<std::int64_t, std::int64_t>> raw_call_edges(
    const json& unit) {
  struct Decl {
    std::string name;
    std::int64_t contract;
  };
  std::map<std::int64_t, Decl> callables;
  for (const auto& top : unit["nodes"]) {
    if (top["nodeType"] != "ContractDefinition") continue;
    for (const auto& member : top["nodes"]) {
      std::string type = member["nodeType"];
      if (type == "FunctionDefinition" || type == "ModifierDefinition") {
        callables[member["id"]] = {member.value("name", ""), top["id"]};
      }
    }
  }

  std::set<std::pair<std::int64_t, std::int64_t>> edges;
  for (const auto& top : unit["nodes"]) {
    if (top["nodeType"] != "ContractDefinition") continue;
    std::int64_t contract = top["id"];
    for (const auto& member : top["nodes"]) {
      auto self = callables.find(member.value("id", std::int64_t{0}));
      if (self == callables.end()) continue;
      std::int64_t caller = self->first;
      each_node(member, [&](const json& node) {
        std::string type = node["nodeType"];
        std::optional<std::int64_t> callee;
        if (type == "ModifierInvocation") {
          callee = ref_of(node["modifierName"]);
        } else if (type == "FunctionCall" && node.value("kind", "") == "functionCall") {
          const json& fn = node["expression"];
          callee = ref_of(fn);
          if (!callee && fn["nodeType"] == "MemberAccess" &&
              fn["expression"]["nodeType"] == "Identifier") {
            std::string base = fn["expression"].value("name", "");
            if (base == "this" || base == "super") {
              for (const auto& [id, decl] : callables) {
                if (decl.contract == contract &&
                    decl.name == fn.value("memberName", "")) {
                  callee = id;
                  break;
                }
              }
            }
          }
        }
        if (callee && callables.count(*callee)) edges.insert({caller, *callee});
      });
    }
  }
  return edges;
}

std::vector<std::int64_t> raw_body_statements(const json& unit,
                                              std::int64_t id) {
  static const std::set<std::string> statements = {
      "IfStatement",  "WhileStatement",      "DoWhileStatement",
      "ForStatement", "Return",              "Break",
      "Continue",     "Throw",               "EmitStatement",
      "ExpressionStatement", "VariableDeclarationStatement",
      "InlineAssembly", "PlaceholderStatement"};
  std::vector<std::int64_t> out;
  each_node(unit, [&](const json& node) {
    if (node["nodeType"] != "FunctionDefinition" || node["id"] != id) return;
    if (!node.contains("body") || node["body"].is_null()) return;
    each_node(node["body"], [&](const json& s) {
      if (statements.count(s["nodeType"])) out.push_back(s["id"]);
    });
  });
  return out;
}

std::vector<std::int64_t> raw_functions_with_body(const json& unit) {
  std::vector<std::int64_t> out;
  each_node(unit, [&](const json& node) {
    if (node["nodeType"] == "FunctionDefinition" && node.contains("body") &&
        !node["body"].is_null()) {
      out.push_back(node["id"]);
    }
  });
  return out;
}

std::size_t count_word(const std::string& text, const std::string& word) {
  auto ident = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
  };
  std::size_t n = 0;
  for (auto pos = text.find(word); pos != std::string::npos;
       pos = text.find(word, pos + 1)) {
    bool left = pos == 0 || !ident(text[pos - 1]);
    bool right = pos + word.size() >= text.size() || !ident(text[pos + word.size()]);
    n += left && right;
  }
  return n;
}

}  // namespace sif::test
