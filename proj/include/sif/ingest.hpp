#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sif/ast.hpp"

namespace sif {

struct LoadOptions {
  std::string origin = "synthetic";
  // Directory holding the Solidity sources named by the unit's absolutePath.
  // Needed only to recover `import {A as B}` names, which the compact AST
  // records as declaration ids into the imported unit.
  std::optional<std::filesystem::path> source_dir;
  // Section to pick from a multi-source compiler listing; matched against
  // the section name and its basename. Empty picks the only section.
  std::string source_name;
};

// Accepts a bare compact-AST SourceUnit object, a standard-JSON output with
// a "sources" map, or the compiler's `--ast-compact-json` console listing.
SourceUnit load_ast(std::string_view document, const LoadOptions& options = {});

// Reads `path` and loads it with origin = path and source_dir = its parent.
SourceUnit load_ast_file(const std::filesystem::path& path);

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
  std::optional<NodeId> node;
};

std::string to_string(const Diagnostic& diagnostic);

// Empty iff the unit meets the ast-core invariants and every resolvable
// reference names an existing node. References are not checked in units
// with imports, since they may point into other units.
std::vector<Diagnostic> validate(const SourceUnit& unit);

struct CompilerConfig {
  std::optional<std::string> executable;  // overrides SIF_SOLC and PATH
  std::vector<std::string> extra_flags;
  double timeout_seconds = 120;
};

// Path of the compiler: config, then $SIF_SOLC, then `solc` on PATH.
// Throws CompilerNotFound.
std::string resolve_compiler(const CompilerConfig& config = {});
bool compiler_available(const CompilerConfig& config = {});

// Runs the compiler on `path` and returns the compact AST JSON of that file
// (other sources pulled in by imports are dropped).
std::string compile_source(const std::filesystem::path& path,
                           const CompilerConfig& config = {});

// compile_source + load_ast with the file's directory as source_dir.
SourceUnit load_source_file(const std::filesystem::path& path,
                            const CompilerConfig& config = {});

// Dispatches on extension: ".sol" goes through the compiler, anything else
// is read as an AST document.
SourceUnit load_input(const std::filesystem::path& path,
                      const CompilerConfig& config = {});

}  // namespace sif
