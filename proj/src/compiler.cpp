#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>

#include <boost/asio/io_context.hpp>
#include <boost/process.hpp>

#include "sif/ingest.hpp"

namespace sif {
namespace bp = boost::process;
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kNotFoundHint =
    "set SIF_SOLC to the absolute path of a solc executable, or put solc "
    "on PATH";

bool is_executable_file(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec) &&
         (fs::status(p, ec).permissions() & fs::perms::owner_exec) !=
             fs::perms::none;
}

// Returns the JSON text of the section for `name` in the console listing, or
// the whole output when it is already a bare JSON document.
std::string extract_section(const std::string& output, const std::string& name) {
  std::size_t first = output.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && output[first] == '{') return output;
  const std::string header = "\n======= " + name + " =======\n";
  std::size_t at = output.find(header);
  if (at == std::string::npos) {
    throw Error(ErrorCode::CompilerError,
                "compiler output has no AST section for " + name);
  }
  std::size_t start = at + header.size();
  std::size_t end = output.find("\n======= ", start);
  return output.substr(start, end == std::string::npos ? std::string::npos
                                                       : end - start);
}

}  // namespace

std::string resolve_compiler(const CompilerConfig& config) {
  if (config.executable) {
    if (is_executable_file(*config.executable)) return *config.executable;
    throw Error(ErrorCode::CompilerNotFound,
                "compiler '" + *config.executable + "' is not an executable "
                "file; " + std::string(kNotFoundHint));
  }
  if (const char* env = std::getenv("SIF_SOLC"); env && *env) {
    if (is_executable_file(env)) return env;
    throw Error(ErrorCode::CompilerNotFound,
                std::string("SIF_SOLC points at '") + env +
                    "', which is not an executable file; " +
                    std::string(kNotFoundHint));
  }
  auto found = bp::search_path("solc");
  if (!found.empty()) return found.string();
  throw Error(ErrorCode::CompilerNotFound,
              "no Solidity compiler found; " + std::string(kNotFoundHint));
}

bool compiler_available(const CompilerConfig& config) {
  try {
    resolve_compiler(config);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string compile_source(const fs::path& path, const CompilerConfig& config) {
  if (config.timeout_seconds <= 0) {
    throw Error(ErrorCode::InvalidRequest, "compiler timeout must be positive");
  }
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorCode::Io, "no such source file: " + path.string());
  }
  const std::string exe = resolve_compiler(config);
  const fs::path dir = fs::absolute(path).parent_path();
  const std::string name = path.filename().string();

  std::vector<std::string> args = config.extra_flags;
  args.insert(args.end(), {"--ast-compact-json", name});

  boost::asio::io_context ctx;
  std::future<std::string> out;
  std::future<std::string> err;
  bp::child child;
  try {
    child = bp::child(exe, bp::args(args), bp::start_dir(dir.string()),
                      bp::std_in.close(), bp::std_out > out,
                      bp::std_err > err, ctx);
  } catch (const bp::process_error& e) {
    throw Error(ErrorCode::CompilerNotFound,
                "cannot start '" + exe + "': " + e.what());
  }
  ctx.run_for(std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::duration<double>(config.timeout_seconds)));
  if (!ctx.stopped()) {
    std::error_code ec;
    child.terminate(ec);
    throw Error(ErrorCode::Timeout, "compiler timed out after " +
                                        std::to_string(config.timeout_seconds) +
                                        " s on " + path.string());
  }
  child.wait();
  std::string stdout_text = out.get();
  std::string stderr_text = err.get();
  if (child.exit_code() != 0) {
    throw Error(ErrorCode::CompilerError,
                "compiler failed on " + path.string() + " (exit " +
                    std::to_string(child.exit_code()) + "):\n" + stderr_text);
  }
  return extract_section(stdout_text, name);
}

SourceUnit load_source_file(const fs::path& path, const CompilerConfig& config) {
  std::string document = compile_source(path, config);
  LoadOptions options;
  options.origin = path.string();
  options.source_dir = fs::absolute(path).parent_path();
  return load_ast(document, options);
}

SourceUnit load_input(const fs::path& path, const CompilerConfig& config) {
  if (path.extension() == ".sol") return load_source_file(path, config);
  return load_ast_file(path);
}

}  // namespace sif
