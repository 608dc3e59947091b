#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sif/ast.hpp"

namespace sif::test {

// Checked-in corpus: <stem>.sol, <stem>.ast.json, <stem>.expected.sol.
std::filesystem::path corpus_dir();
std::vector<std::string> corpus_stems();
std::filesystem::path ast_path(const std::string& stem);
std::filesystem::path sol_path(const std::string& stem);
SourceUnit load_fixture(const std::string& stem);
std::string read_text(const std::filesystem::path& path);

// True when SIF_SOLC (or solc on PATH) resolves to a runnable compiler.
bool have_compiler();

// Oracles over the raw compiler JSON. They deliberately avoid the AstNode
// model so that they check it rather than restate it.
nlohmann::json raw_unit(const std::string& stem);

std::size_t raw_count(const nlohmann::json& unit,
                      const std::set<std::string>& node_types);

// (caller id, callee id) for every call of a function or modifier declared
// in the unit, made from inside a function or modifier body. Direct calls
// resolve through referencedDeclaration; `this.f` and `super.f` fall back
// to a same-contract name match when the compiler left no id.
std::set<std::pair<std::int64_t, std::int64_t>> raw_call_edges(
    const nlohmann::json& unit);

// Ids of all statements (Blocks excluded) below the body of function `id`.
std::vector<std::int64_t> raw_body_statements(const nlohmann::json& unit,
                                              std::int64_t id);

// Ids of FunctionDefinitions with a body.
std::vector<std::int64_t> raw_functions_with_body(const nlohmann::json& unit);

// Occurrences of `word` delimited by non-identifier characters.
std::size_t count_word(const std::string& text, const std::string& word);

}  // namespace sif::test
