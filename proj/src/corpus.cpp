#include "sif/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "sif/analyses.hpp"
#include "sif/codegen.hpp"

namespace sif {
namespace fs = std::filesystem;
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs task(0..n-1) on at most `workers` threads.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& task) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < n; i = next++) task(i);
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(loop);
  if (workers > 0) loop();
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_difference(const std::string& want, const std::string& got) {
  std::istringstream a(want), b(got);
  std::string la, lb;
  for (std::size_t line = 1;; ++line) {
    bool ha = static_cast<bool>(std::getline(a, la));
    bool hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) return "texts differ in line endings";
    if (ha != hb || la != lb) {
      return "line " + std::to_string(line) + ": expected '" + (ha ? la : "<eof>") +
             "', got '" + (hb ? lb : "<eof>") + "'";
    }
  }
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

fs::path scratch_dir() {
  std::random_device rd;
  std::ostringstream name;
  name << "sif-corpus-" << std::hex << rd() << rd();
  fs::path dir = fs::temp_directory_path() / name.str();
  fs::create_directories(dir);
  return dir;
}

}  // namespace

std::string corpus_stem(const fs::path& file) {
  std::string name = file.filename().string();
  for (std::string_view suffix : {".ast.json", ".json"}) {
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return name.substr(0, name.size() - suffix.size());
    }
  }
  return file.stem().string();
}

CorpusReport run_corpus(const fs::path& dir, const CorpusOptions& options) {
  auto start = Clock::now();
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::Io, "not a directory: " + dir.string());
  }
  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      inputs.push_back(entry.path());
    }
  }
  std::sort(inputs.begin(), inputs.end());

  CorpusReport report;
  if (inputs.empty()) report.warnings.push_back("no AST documents in " + dir.string());
  report.files.resize(inputs.size());
  std::vector<std::optional<SourceUnit>> units(inputs.size());
  std::vector<std::string> emitted(inputs.size());

  parallel_for(inputs.size(), options.workers, [&](std::size_t i) {
    CorpusFileResult& r = report.files[i];
    r.file = inputs[i];
    auto t = Clock::now();
    try {
      units[i] = load_ast_file(inputs[i]);
    } catch (const std::exception& e) {
      r.stage = "ingest";
      r.diagnostic = e.what();
      return;
    }
    r.ingest_ms = ms_since(t);
    t = Clock::now();
    try {
      emitted[i] = emit_source(*units[i]);
    } catch (const std::exception& e) {
      r.stage = "emit";
      r.diagnostic = e.what();
      return;
    }
    r.emit_ms = ms_since(t);
    r.lines = count_lines(emitted[i]);
    fs::path golden = dir / (corpus_stem(inputs[i]) + ".expected.sol");
    if (fs::exists(golden)) {
      r.golden_checked = true;
      auto want = read_file(golden);
      if (!want) {
        r.stage = "golden";
        r.diagnostic = "cannot read " + golden.string();
        return;
      }
      if (*want != emitted[i]) {
        r.stage = "golden";
        r.diagnostic = first_difference(*want, emitted[i]);
        return;
      }
    }
    r.ok = true;
  });

  bool compile = options.with_compiler;
  if (compile && !compiler_available(options.compiler)) {
    report.warnings.push_back(
        "no compiler found (set SIF_SOLC); compared against golden files only");
    compile = false;
  }
  if (compile && !inputs.empty()) {
    fs::path scratch = scratch_dir();
    std::vector<fs::path> sources(inputs.size());
    std::map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (!report.files[i].ok) continue;
      std::string base = units[i]->root().get_string("absolutePath");
      std::string name = base.empty() ? corpus_stem(inputs[i]) + ".sol"
                                      : fs::path(base).filename().string();
      if (auto [it, fresh] = owner.emplace(name, i); !fresh) {
        report.warnings.push_back(inputs[i].filename().string() + " and " +
                                  inputs[it->second].filename().string() +
                                  " both emit " + name + "; using " +
                                  corpus_stem(inputs[i]) + ".sol");
        name = corpus_stem(inputs[i]) + ".sol";
      }
      sources[i] = scratch / name;
      std::ofstream(sources[i], std::ios::binary) << emitted[i];
    }
    parallel_for(inputs.size(), options.workers, [&](std::size_t i) {
      CorpusFileResult& r = report.files[i];
      if (!r.ok) return;
      auto t = Clock::now();
      try {
        SourceUnit again = load_source_file(sources[i], options.compiler);
        r.compile_ms = ms_since(t);
        r.recompiled = true;
        if (!structurally_equal(*units[i], again)) {
          auto diffs = ast_diff(*units[i], again);
          r.ok = false;
          r.stage = "compare";
          r.diagnostic = diffs.empty() ? "structural mismatch"
                                       : to_string(diffs.front());
        }
      } catch (const std::exception& e) {
        r.compile_ms = ms_since(t);
        r.ok = false;
        r.stage = "compile";
        r.diagnostic = e.what();
      }
    });
    fs::remove_all(scratch, ec);
  }

  for (const auto& r : report.files) (r.ok ? report.successes : report.failures)++;
  report.total_ms = ms_since(start);
  return report;
}

std::string CorpusReport::to_text() const {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  for (const auto& r : files) {
    out << (r.ok ? "ok   " : "FAIL ") << r.file.filename().string();
    if (r.ok) {
      out << "  " << r.lines << " lines, emit " << r.emit_ms << " ms";
      if (r.golden_checked) out << ", golden";
      if (r.recompiled) out << ", recompiled";
    } else {
      out << "  [" << r.stage << "] " << r.diagnostic;
    }
    out << "\n";
  }
  for (const auto& w : warnings) out << "warning: " << w << "\n";
  double rate = files.empty() ? 100.0 : 100.0 * successes / files.size();
  out << "processed " << files.size() << ", succeeded " << successes
      << ", failed " << failures << " (" << rate << "%) in " << total_ms
      << " ms\n";
  return out.str();
}

std::string CorpusReport::to_json() const {
  nlohmann::json doc;
  doc["command"] = "corpus";
  doc["processed"] = files.size();
  doc["successes"] = successes;
  doc["failures"] = failures;
  doc["total_ms"] = total_ms;
  doc["warnings"] = warnings;
  doc["files"] = nlohmann::json::array();
  for (const auto& r : files) {
    doc["files"].push_back({
        {"file", r.file.filename().string()},
        {"ok", r.ok},
        {"stage", r.stage},
        {"diagnostic", r.diagnostic},
        {"lines", r.lines},
        {"ingest_ms", r.ingest_ms},
        {"emit_ms", r.emit_ms},
        {"compile_ms", r.compile_ms},
        {"golden_checked", r.golden_checked},
        {"recompiled", r.recompiled},
    });
  }
  return doc.dump(2) + "\n";
}

}  // namespace sif
