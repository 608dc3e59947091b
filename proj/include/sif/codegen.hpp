#pragma once

#include <string>

#include "sif/ast.hpp"

namespace sif {

struct FormatConfig {
  int indent_width = 4;
  std::string newline = "\n";
};

// Source text for one subtree. Statements and contract-level declarations
// end with a newline; expressions, type names and parameters do not.
// Throws ArityViolation on a malformed subtree.
std::string emit_node(const AstNode& node, const FormatConfig& fmt = {});

// Whole unit; empty for a unit with no children, otherwise newline-terminated.
std::string emit_source(const SourceUnit& unit, const FormatConfig& fmt = {});

// Binding strength used for parenthesization; higher binds tighter.
int precedence(const AstNode& expression);

}  // namespace sif
