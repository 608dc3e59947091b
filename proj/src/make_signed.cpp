#include <algorithm>
#include <regex>

#include "sif/transforms.hpp"
#include "sif/traverse.hpp"

namespace sif {

MakeSignedResult make_signed(const SourceUnit& unit) {
  static const std::regex kUnsigned("uint(\\d*)");
  MakeSignedResult result;
  Hooks hooks;
  hooks.visit = [&](Cursor& c) {
    const AstNode& n = c.node();
    if (n.kind() != NodeKind::ElementaryTypeName) return;
    std::smatch m;
    const std::string name = n.get_string("name");
    if (!std::regex_match(name, m, kUnsigned)) return;
    // Only declared types: variables, parameters, returns, struct members,
    // nested in mappings and arrays. Conversions like uint(x) are
    // expressions and stay as they are.
    auto anc = c.ancestors();
    bool declared = std::any_of(anc.begin(), anc.end(), [](const AstNode* a) {
      return is_variable_like(a->kind());
    });
    if (!declared) return;
    c.set("name", "int" + m[1].str());
    if (n.has("typeString")) c.set("typeString", "int" + m[1].str());
    if (n.has("signedness")) c.set("signedness", std::string("signed"));
    ++result.count;
  };
  result.unit = walk(unit, hooks).unit;
  return result;
}

}  // namespace sif
