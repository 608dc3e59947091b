#include "sif/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sif/analyses.hpp"
#include "sif/codegen.hpp"
#include "sif/corpus.hpp"
#include "sif/ingest.hpp"
#include "sif/transforms.hpp"

namespace sif {
namespace {

using nlohmann::json;

struct Globals {
  std::string format = "text";
  bool no_emit = false;
  std::string solc;

  bool structured() const { return format == "structured"; }
  CompilerConfig compiler() const {
    CompilerConfig c;
    if (!solc.empty()) c.executable = solc;
    return c;
  }
};

class Runner {
 public:
  Runner(const Globals& g, std::ostream& out, std::ostream& err)
      : g_(g), out_(out), err_(err) {}

  SourceUnit load(const std::string& path) {
    return load_input(path, g_.compiler());
  }

  // "-" or empty means standard output.
  void write(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      out_ << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot write " + path);
    file << text;
    if (!file) throw Error(ErrorCode::Io, "write failed: " + path);
  }

  void document(const json& doc) { out_ << doc.dump(2) << "\n"; }

  // Shared tail of the transforms: emit the unit unless suppressed, then
  // report. In structured mode source bound for stdout goes into the
  // document instead.
  void finish_transform(json doc, const SourceUnit& unit,
                        const std::string& output, const std::string& summary) {
    bool to_stdout = output.empty() || output == "-";
    if (!g_.no_emit) {
      std::string source = emit_source(unit);
      if (g_.structured() && to_stdout) {
        doc["source"] = source;
      } else {
        write(output, source);
        if (!to_stdout) doc["output"] = output;
      }
    }
    if (g_.structured()) {
      document(doc);
    } else if (!summary.empty()) {
      err_ << summary;
    }
  }

  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
};

json to_json(const std::optional<Span>& span) {
  return span ? json(to_string(*span)) : json();
}

json params_json(const std::vector<Param>& params) {
  json list = json::array();
  for (const auto& p : params) list.push_back({{"type", p.type}, {"name", p.name}});
  return list;
}

json report_json(const InstrumentationReport& report) {
  return json::parse(report.to_json())["entries"];
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string joined_names(std::initializer_list<std::string_view> names) {
  std::string out;
  for (auto n : names) out += (out.empty() ? "" : ", ") + std::string(n);
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Solidity AST toolkit: query, transform and regenerate contracts",
               args.empty() ? "sif" : args[0]};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--no-emit", g.no_emit, "Do not generate Solidity source");
  app.add_option("--solc", g.solc, "Compiler for .sol inputs (default $SIF_SOLC, then PATH)");

  std::string in, in2, output, dot, function, contract, kind, old_name, new_name,
      vuln, only;
  bool semantic = false, with_compiler = false, interfaces = false;
  std::size_t jobs = 0;

  auto input = [&](CLI::App* sub) {
    sub->add_option("input", in, "AST document or .sol file")->required();
  };
  auto out_opt = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Output file ('-' for stdout)");
  };

  // Enumerated arguments are checked at parse time so that a bad value is a
  // usage error rather than a tool error.
  const CLI::Validator kind_name(
      [](std::string& v) {
        return parse_identifier_kind(v) ? std::string() : "unknown identifier kind '" + v + "'";
      },
      "KIND");
  const CLI::Validator vuln_list(
      [](std::string& v) {
        for (const auto& item : split_list(v)) {
          if (!parse_vulnerability(item)) return "unknown vulnerability '" + item + "'";
        }
        return std::string();
      },
      "VULN");

  auto* functions = app.add_subcommand("functions", "List functions per contract");
  input(functions);
  functions->add_flag("--include-interfaces", interfaces,
                      "Also list interface members");

  auto* callgraph = app.add_subcommand("callgraph", "Call graph of the unit");
  input(callgraph);
  callgraph->add_option("--dot", dot, "Write the graph in dot format ('-' for stdout)");

  auto* cfg = app.add_subcommand("cfg", "Control-flow graph of one function");
  input(cfg);
  cfg->add_option("--function", function, "Function name")->required();
  cfg->add_option("--contract", contract, "Contract declaring the function");
  cfg->add_option("--dot", dot, "Write the graph in dot format ('-' for stdout)");
  cfg->add_flag("--semantic-returns", semantic,
                "Route return and throw to an exit block");

  auto* diff = app.add_subcommand("diff", "Structural differences of two units");
  diff->add_option("left", in, "First input")->required();
  diff->add_option("right", in2, "Second input")->required();

  auto* loops = app.add_subcommand("loops", "Count loops");
  input(loops);

  auto* rename_cmd = app.add_subcommand("rename", "Rename a declaration and its references");
  input(rename_cmd);
  rename_cmd->add_option("--kind", kind, "contract, function, variable, struct, enum, event or modifier")
      ->required()
      ->check(kind_name);
  rename_cmd->add_option("--old", old_name, "Current name")->required();
  rename_cmd->add_option("--new", new_name, "New name")->required();
  out_opt(rename_cmd);

  auto* seed = app.add_subcommand("seed", "Inject a vulnerability");
  input(seed);
  seed->add_option("--vuln", vuln,
                   joined_names({"division-by-zero", "unsigned-overflow",
                                 "unsigned-underflow", "signed-overflow-underflow"}))
      ->required()
      ->check(vuln_list);
  seed->add_option("--function", function, "Target function (default: first with a body)");
  out_opt(seed);

  auto* assert_cmd = app.add_subcommand("assert", "Insert arithmetic guards");
  input(assert_cmd);
  assert_cmd->add_option("--only", only, "Comma-separated vulnerability kinds")->check(vuln_list);
  out_opt(assert_cmd);

  auto* make_signed_cmd = app.add_subcommand("make-signed", "Turn uint types into int");
  input(make_signed_cmd);
  out_opt(make_signed_cmd);

  auto* regen = app.add_subcommand("regen", "Regenerate source from an AST");
  input(regen);
  out_opt(regen);

  auto* corpus = app.add_subcommand("corpus", "Round-trip every AST document in a directory");
  corpus->add_option("dir", in, "Corpus directory")->required();
  corpus->add_flag("--with-compiler", with_compiler,
                   "Recompile emitted sources and compare structurally");
  corpus->add_option("--jobs", jobs, "Worker threads (default: all cores)");

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; everything else is a usage error.
    if (app.exit(e, out, err) == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }

  Runner run(g, out, err);
  try {
    if (functions->parsed()) {
      auto list = list_functions(run.load(in), {interfaces});
      if (g.structured()) {
        json doc = {{"command", "functions"}, {"functions", json::array()}};
        for (const auto& f : list) {
          doc["functions"].push_back({{"contract", f.contract},
                                      {"name", f.name},
                                      {"params", params_json(f.params)},
                                      {"returns", params_json(f.returns)},
                                      {"id", f.id},
                                      {"text", f.render()}});
        }
        run.document(doc);
      } else {
        for (const auto& f : list) out << f.render() << "\n";
      }
    } else if (callgraph->parsed()) {
      CallGraph graph = build_call_graph(run.load(in));
      if (!dot.empty()) run.write(dot, graph_to_dot(graph));
      if (g.structured()) {
        json doc = {{"command", "callgraph"}, {"nodes", json::array()},
                    {"edges", json::array()}};
        for (const auto& n : graph.nodes) {
          doc["nodes"].push_back({{"id", n.id},
                                  {"contract", n.contract},
                                  {"name", n.name},
                                  {"kind", to_string(n.kind)},
                                  {"qualified", n.qualified}});
        }
        for (const auto& [from, to] : graph.edges) {
          doc["edges"].push_back({{"from", graph.nodes[from].qualified},
                                  {"to", graph.nodes[to].qualified}});
        }
        run.document(doc);
      } else if (dot != "-") {
        for (const auto& [from, to] : graph.edges) {
          out << graph.nodes[from].qualified << " -> "
              << graph.nodes[to].qualified << "\n";
        }
      }
    } else if (cfg->parsed()) {
      SourceUnit unit = run.load(in);
      const AstNode* fn = find_function(unit, function, contract);
      if (!fn) {
        throw Error(ErrorCode::NotFound, "no function named '" + function + "'" +
                                             (contract.empty() ? "" : " in " + contract));
      }
      Cfg graph = build_cfg(*fn, {semantic});
      if (!dot.empty()) run.write(dot, graph_to_dot(graph));
      if (g.structured()) {
        json doc = {{"command", "cfg"}, {"function", graph.function},
                    {"blocks", json::array()}, {"edges", json::array()}};
        for (const auto& b : graph.blocks) {
          doc["blocks"].push_back({{"index", b.index},
                                   {"statements", b.statements},
                                   {"preview", b.preview},
                                   {"condition", b.condition},
                                   {"unreachable", b.unreachable},
                                   {"exit", b.exit}});
        }
        for (const auto& e : graph.edges) {
          doc["edges"].push_back(
              {{"from", e.from}, {"to", e.to}, {"label", to_string(e.label)}});
        }
        run.document(doc);
      } else if (dot != "-") {
        for (const auto& e : graph.edges) {
          out << "Node [" << e.from << "] -> Node [" << e.to << "]";
          if (e.label != EdgeLabel::Unconditional) out << " label=" << to_string(e.label);
          out << ";\n";
        }
      }
    } else if (diff->parsed()) {
      auto records = ast_diff(run.load(in), run.load(in2));
      if (g.structured()) {
        json doc = {{"command", "diff"}, {"records", json::array()}};
        for (const auto& r : records) {
          doc["records"].push_back({{"path", r.path},
                                    {"category", to_string(r.category)},
                                    {"kind", r.node_kind},
                                    {"field", r.field},
                                    {"left", r.left},
                                    {"right", r.right},
                                    {"left_span", to_json(r.left_span)},
                                    {"right_span", to_json(r.right_span)}});
        }
        run.document(doc);
      } else {
        for (const auto& r : records) out << to_string(r) << "\n";
      }
    } else if (loops->parsed()) {
      std::size_t n = count_loops(run.load(in));
      if (g.structured()) {
        run.document({{"command", "loops"}, {"loops", n}});
      } else {
        out << n << "\n";
      }
    } else if (rename_cmd->parsed()) {
      auto k = parse_identifier_kind(kind);
      if (!k) throw Error(ErrorCode::InvalidRequest, "unknown identifier kind '" + kind + "'");
      RenameResult r = rename(run.load(in), {*k, old_name, new_name});
      std::string summary =
          "renamed " + std::to_string(r.count) + " occurrence(s)\n";
      for (const auto& w : r.warnings) summary += "warning: " + w + "\n";
      run.finish_transform(
          {{"command", "rename"}, {"count", r.count}, {"warnings", r.warnings}},
          r.unit, output, summary);
    } else if (seed->parsed()) {
      auto v = parse_vulnerability(vuln);
      if (!v) throw Error(ErrorCode::InvalidRequest, "unknown vulnerability '" + vuln + "'");
      std::optional<std::string> target;
      if (!function.empty()) target = function;
      SeedResult r = seed_fault(run.load(in), *v, target);
      run.finish_transform({{"command", "seed"},
                            {"injected_nodes", r.injected_nodes},
                            {"report", report_json(r.report)}},
                           r.unit, output, r.report.to_text());
    } else if (assert_cmd->parsed()) {
      std::set<Vulnerability> selection(std::begin(kAllVulnerabilities),
                                        std::end(kAllVulnerabilities));
      if (!only.empty()) {
        selection.clear();
        for (const auto& item : split_list(only)) {
          auto v = parse_vulnerability(item);
          if (!v) throw Error(ErrorCode::InvalidRequest, "unknown vulnerability '" + item + "'");
          selection.insert(*v);
        }
      }
      AssertionResult r = insert_assertions(run.load(in), selection);
      run.finish_transform(
          {{"command", "assert"}, {"report", report_json(r.report)}}, r.unit,
          output, r.report.to_text());
    } else if (make_signed_cmd->parsed()) {
      MakeSignedResult r = make_signed(run.load(in));
      run.finish_transform({{"command", "make-signed"}, {"count", r.count}},
                           r.unit, output,
                           "changed " + std::to_string(r.count) + " type name(s)\n");
    } else if (regen->parsed()) {
      run.finish_transform({{"command", "regen"}}, run.load(in), output, "");
    } else if (corpus->parsed()) {
      CorpusOptions options;
      options.with_compiler = with_compiler;
      options.compiler = g.compiler();
      options.workers = jobs;
      CorpusReport report = run_corpus(in, options);
      if (g.structured()) {
        out << report.to_json();
      } else {
        out << report.to_text();
      }
      return report.failures == 0 ? kExitOk : kExitFailure;
    }
  } catch (const Error& e) {
    err << "sif: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "sif: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace sif
