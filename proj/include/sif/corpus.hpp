#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "sif/ingest.hpp"

namespace sif {

// Round-trip harness over a directory of AST documents (*.json).
//
// Per file: ingest, emit, and compare the emitted text with the golden file
// `<stem>.expected.sol` next to it when one exists (stem drops ".ast.json"
// or ".json"). With `with_compiler`, all emitted files are written to a
// scratch directory under their original file names (so imports between
// them resolve), recompiled, re-ingested and compared structurally with
// the original.
struct CorpusOptions {
  bool with_compiler = false;
  CompilerConfig compiler;
  std::size_t workers = 0;  // 0: hardware concurrency
};

struct CorpusFileResult {
  std::filesystem::path file;
  bool ok = false;
  std::string stage;       // failing stage: ingest, emit, golden, compile, compare
  std::string diagnostic;  // failure detail
  std::size_t lines = 0;   // of emitted source
  double ingest_ms = 0;
  double emit_ms = 0;
  double compile_ms = 0;
  bool golden_checked = false;
  bool recompiled = false;
};

struct CorpusReport {
  std::vector<CorpusFileResult> files;  // sorted by file name
  std::vector<std::string> warnings;
  std::size_t successes = 0;
  std::size_t failures = 0;
  double total_ms = 0;

  std::size_t processed() const { return files.size(); }
  std::string to_text() const;
  std::string to_json() const;
};

// Throws Io when `dir` is not a directory. Per-file problems are recorded
// as failures.
CorpusReport run_corpus(const std::filesystem::path& dir,
                        const CorpusOptions& options = {});

// "<stem>" of an AST document name: "a.ast.json" -> "a", "b.json" -> "b".
std::string corpus_stem(const std::filesystem::path& file);

}  // namespace sif
