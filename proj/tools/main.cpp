// planarsplit command line tool.
//
// Subcommands: gen, solve, verify, oracle, stats. Results go to standard
// output or the file named by --out; progress and diagnostics go to
// standard error. Exit codes: 0 success (including a decided UNSAT oracle
// query), 1 verification found a bad coloring, 2 an input violated a
// documented precondition (girth, planarity, budget), 3 an internal
// invariant failed, 64 usage or parse errors.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "planarsplit/coloring.hpp"
#include "planarsplit/error.hpp"
#include "planarsplit/families.hpp"
#include "planarsplit/graph.hpp"
#include "planarsplit/json_io.hpp"
#include "planarsplit/oracle.hpp"
#include "planarsplit/reducer.hpp"

namespace {

using namespace planarsplit;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitBadColoring = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitAssumption = 3;
constexpr int kExitUsage = 64;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Error::Code::kBadParameter:
    case Error::Code::kParseError:
    case Error::Code::kIoError:
      return kExitUsage;
    case Error::Code::kAssumptionViolated:
    case Error::Code::kRuleDeadlock:
      return kExitAssumption;
    default:
      return kExitPrecondition;
  }
}

void report_error(const Error& e) {
  std::cerr << "error: " << e.message() << "\n";
  if (!e.tag().empty()) {
    std::cerr << "  tag: " << e.tag() << "\n";
    if (!e.witness().empty()) std::cerr << "  witness: " << e.witness() << "\n";
  }
}

MarkedGraph load_graph(const std::string& path) {
  return graph_from_json(read_text_file(path));
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string family;
  int n = 0;
  int t = 0;
  int rows = 0;
  int cols = 0;
  std::uint64_t seed = 1;
  std::string out = "-";
  bool dot = false;
};

int run_gen(const GenArgs& args) {
  PlanarGraph g;
  std::map<std::string, int> marks;
  if (args.family == "cycle") {
    require_param(args.n > 0, "--family cycle needs --n");
    g = cycle(args.n);
  } else if (args.family == "hex") {
    require_param(args.rows > 0 && args.cols > 0, "--family hex needs --rows and --cols");
    g = hex_patch(args.rows, args.cols);
  } else if (args.family == "A") {
    require_param(args.t > 0, "--family A needs --t");
    MarkedGraph m = gadget_A(args.t);
    g = std::move(m.graph);
    marks = std::move(m.marks);
  } else if (args.family == "B") {
    require_param(args.t > 0, "--family B needs --t");
    MarkedGraph m = gadget_B(args.t);
    g = std::move(m.graph);
    marks = std::move(m.marks);
  } else if (args.family == "G") {
    require_param(args.t > 0, "--family G needs --t");
    g = lower_bound_G(args.t);
  } else if (args.family == "girth5") {
    MarkedGraph m = girth5_example();
    g = std::move(m.graph);
    marks = std::move(m.marks);
  } else if (args.family == "random") {
    require_param(args.n > 0, "--family random needs --n");
    g = random_planar_girth6(args.n, args.seed);
  } else {
    throw Error(Error::Code::kBadParameter,
                "unknown family '" + args.family +
                    "' (expected cycle, hex, A, B, G, girth5 or random)");
  }
  std::cerr << "generated " << args.family << ": " << g.num_vertices() << " vertices, "
            << g.num_edges() << " edges\n";
  write_text_file(args.out, args.dot ? graph_to_dot(g) : graph_to_json(g, marks));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::vector<std::string> inputs;
  std::string lists_path;
  std::string out = "-";
  std::string out_dir;
  int jobs = 1;
  bool verify = false;
  bool trace = false;
  bool dot = false;
  long long budget = 0;
  int oracle_threshold = 14;
};

// Solves one instance; returns the process exit code contribution.
int solve_one(const SolveArgs& args, const std::string& input, const std::string& out,
              std::mutex* log_mutex) {
  const auto started = std::chrono::steady_clock::now();
  const PlanarGraph g = load_graph(input).graph;
  ListAssignment lists;
  if (args.lists_path.empty()) {
    lists = ListAssignment::uniform(g, {0, 1});
  } else {
    lists = lists_from_json(read_text_file(args.lists_path));
  }

  SolveOptions opts;
  opts.oracle_threshold = args.oracle_threshold;
  opts.node_budget = args.budget;
  if (args.trace) {
    opts.trace = [&](const std::string& line) {
      std::scoped_lock lock(*log_mutex);
      std::cerr << "trace " << input << ": " << line << "\n";
    };
  }
  const Coloring c = solve(g, lists, opts);

  int code = kExitOk;
  std::string verdict;
  if (args.verify) {
    const GoodReport report = is_good(g, c);
    const bool lists_ok = respects_lists(g, c, lists);
    const ColoringMetrics m = coloring_metrics(g, c);
    verdict = " good=" + std::string(report.good && lists_ok ? "yes" : "NO") +
              " max_component_order=" + std::to_string(m.max_component_order) +
              " max_mono_path_order=" + std::to_string(m.max_mono_path_order);
    if (!report.good || !lists_ok) code = kExitBadColoring;
  }
  write_text_file(out, args.dot ? graph_to_dot(g, &c) : coloring_to_json(c));

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::scoped_lock lock(*log_mutex);
  std::cerr << "solved " << input << ": n=" << g.num_vertices() << " m=" << g.num_edges()
            << " in " << elapsed.count() << "ms" << verdict << "\n";
  return code;
}

int run_solve(const SolveArgs& args) {
  std::vector<std::string> inputs = args.inputs;
  if (inputs.empty()) inputs.push_back("-");
  std::mutex log_mutex;

  if (inputs.size() == 1 && args.out_dir.empty()) {
    return solve_one(args, inputs[0], args.out, &log_mutex);
  }

  // Batch mode: each input file gets a coloring file in --out-dir.
  if (args.out_dir.empty()) {
    throw Error(Error::Code::kBadParameter, "multiple inputs need --out-dir");
  }
  std::filesystem::create_directories(args.out_dir);
  std::vector<std::string> outs;
  for (const auto& input : inputs) {
    if (input == "-") {
      throw Error(Error::Code::kBadParameter, "standard input cannot be part of a batch");
    }
    const auto stem = std::filesystem::path(input).stem().string();
    outs.push_back((std::filesystem::path(args.out_dir) / (stem + ".coloring.json")).string());
  }

  const int jobs = std::max(1, std::min<int>(args.jobs, static_cast<int>(inputs.size())));
  std::atomic<size_t> next{0};
  std::atomic<int> worst{kExitOk};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < inputs.size(); i = next.fetch_add(1)) {
      int code = kExitOk;
      try {
        code = solve_one(args, inputs[i], outs[i], &log_mutex);
      } catch (const Error& e) {
        std::scoped_lock lock(log_mutex);
        std::cerr << "failed " << inputs[i] << ": ";
        report_error(e);
        code = exit_code_for(e);
      }
      int seen = worst.load();
      while (code > seen && !worst.compare_exchange_weak(seen, code)) {
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return worst.load();
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string graph_path;
  std::string coloring_path;
  int max_len = kDefaultMaxPathLen;
  std::string out = "-";
};

int run_verify(const VerifyArgs& args) {
  const PlanarGraph g = load_graph(args.graph_path).graph;
  const Coloring c = coloring_from_json(read_text_file(args.coloring_path));
  const GoodReport report = is_good(g, c, args.max_len);
  const ColoringMetrics m = coloring_metrics(g, c);

  json doc;
  doc["format"] = 1;
  doc["good"] = report.good;
  doc["max_len"] = args.max_len;
  doc["metrics"] = {{"max_mono_degree", m.max_mono_degree},
                    {"max_component_order", m.max_component_order},
                    {"max_mono_path_order", m.max_mono_path_order}};
  if (!report.good) {
    doc["reason"] = report.reason;
    if (report.violation.has_value()) {
      doc["witness"] = {{"color", report.violation->color},
                       {"vertices", report.violation->vertices}};
    }
  }
  write_text_file(args.out, doc.dump(2) + "\n");
  std::cerr << "verify " << args.graph_path << ": " << (report.good ? "good" : "NOT GOOD")
            << " (max-len " << args.max_len << ")\n";
  return report.good ? kExitOk : kExitBadColoring;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleArgs {
  std::string graph_path;
  std::string lists_path;
  std::string property = "good";
  int k = 0;
  int max_len = kDefaultMaxPathLen;
  int d = 0;
  std::string mode = "exists";
  long long budget = 0;
  bool no_prune = false;
  std::string out = "-";
};

int run_oracle(const OracleArgs& args) {
  const PlanarGraph g = load_graph(args.graph_path).graph;
  ListAssignment lists;
  if (args.lists_path.empty()) {
    lists = ListAssignment::uniform(g, {0, 1});
  } else {
    lists = lists_from_json(read_text_file(args.lists_path));
  }

  OracleQuery query;
  if (args.property == "good") {
    query.property = OracleProperty::good(args.max_len);
  } else if (args.property == "pk-free") {
    require_param(args.k > 0, "--property pk-free needs --k");
    query.property = OracleProperty::pk_free(args.k);
  } else if (args.property == "fragmented") {
    require_param(args.k > 0, "--property fragmented needs --k");
    query.property = OracleProperty::fragmented(args.k);
  } else if (args.property == "defective") {
    query.property = OracleProperty::defective(args.d);
  } else {
    throw Error(Error::Code::kBadParameter,
                "unknown property '" + args.property +
                    "' (expected good, pk-free, fragmented or defective)");
  }
  if (args.mode == "exists") {
    query.mode = OracleQuery::Mode::kExists;
  } else if (args.mode == "forall") {
    query.mode = OracleQuery::Mode::kForallFail;
  } else {
    throw Error(Error::Code::kBadParameter, "unknown mode '" + args.mode + "'");
  }

  OracleOptions opts;
  opts.node_budget = args.budget;
  opts.prune = !args.no_prune;
  const OracleResult result = oracle_search(g, lists, query, opts);

  if (result.satisfiable) {
    std::cerr << (query.mode == OracleQuery::Mode::kExists
                      ? "SAT"
                      : "claim refuted, counterexample coloring follows")
              << " nodes=" << result.stats.nodes << "\n";
    write_text_file(args.out, coloring_to_json(*result.witness));
  } else {
    std::cerr << (query.mode == OracleQuery::Mode::kExists ? "no coloring has the property"
                                                           : "claim holds")
              << "\n";
    write_text_file(args.out, "UNSAT nodes=" + std::to_string(result.stats.nodes) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// stats

struct StatsArgs {
  std::string graph_path;
  std::string out = "-";
};

int run_stats(const StatsArgs& args) {
  const MarkedGraph mg = load_graph(args.graph_path);
  const PlanarGraph& g = mg.graph;

  json doc;
  doc["format"] = 1;
  doc["vertices"] = g.num_vertices();
  doc["edges"] = g.num_edges();
  doc["components"] = static_cast<int>(g.components().size());
  const int girth = g.girth();
  if (girth == kInfinity) {
    doc["girth"] = nullptr;
  } else {
    doc["girth"] = girth;
  }
  int min_deg = 0;
  int max_deg = 0;
  std::map<int, int> degree_histogram;
  bool first = true;
  for (int v : g.vertex_ids()) {
    const int d = g.degree(v);
    ++degree_histogram[d];
    min_deg = first ? d : std::min(min_deg, d);
    max_deg = first ? d : std::max(max_deg, d);
    first = false;
  }
  doc["min_degree"] = min_deg;
  doc["max_degree"] = max_deg;
  json hist = json::object();
  for (const auto& [d, count] : degree_histogram) hist[std::to_string(d)] = count;
  doc["degree_histogram"] = hist;
  const auto faces = g.faces();
  doc["faces"] = static_cast<int>(faces.size());
  int max_face = 0;
  for (const auto& f : faces) max_face = std::max(max_face, f.length());
  doc["max_face_length"] = max_face;
  if (!mg.marks.empty()) doc["marks"] = mg.marks;

  write_text_file(args.out, doc.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-list coloring of planar graphs of girth >= 6 into short paths"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a graph from a named family");
  gen->add_option("--family", gen_args.family, "cycle, hex, A, B, G, girth5 or random")
      ->required();
  gen->add_option("--n", gen_args.n, "size parameter (cycle, random)");
  gen->add_option("--t", gen_args.t, "gadget parameter (A, B, G)");
  gen->add_option("--rows", gen_args.rows, "hex patch rows");
  gen->add_option("--cols", gen_args.cols, "hex patch columns");
  gen->add_option("--seed", gen_args.seed, "random seed");
  gen->add_option("--out", gen_args.out, "output path, - for stdout");
  gen->add_flag("--dot", gen_args.dot, "emit Graphviz DOT instead of JSON");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "2-list color a graph into short paths");
  solve->add_option("input", solve_args.inputs, "graph JSON file(s), - for stdin");
  solve->add_option("--lists", solve_args.lists_path, "list assignment JSON (default {0,1})");
  solve->add_option("--out", solve_args.out, "coloring output path, - for stdout");
  solve->add_option("--out-dir", solve_args.out_dir, "output directory for batch runs");
  solve->add_option("--jobs", solve_args.jobs, "parallel workers over multiple input files");
  solve->add_flag("--verify", solve_args.verify, "re-check the coloring and report metrics");
  solve->add_flag("--trace", solve_args.trace, "log each solver step to stderr");
  solve->add_flag("--dot", solve_args.dot, "emit colored DOT instead of coloring JSON");
  solve->add_option("--budget", solve_args.budget,
                    "search node budget for exhaustive leaves (default $PLANARSPLIT_BUDGET)");
  solve->add_option("--oracle-threshold", solve_args.oracle_threshold,
                    "hand instances this small to the exhaustive search");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "check a coloring and compute metrics");
  verify->add_option("graph", verify_args.graph_path, "graph JSON file")->required();
  verify->add_option("coloring", verify_args.coloring_path, "coloring JSON file")->required();
  verify->add_option("--max-len", verify_args.max_len, "maximum allowed path length (edges)");
  verify->add_option("--out", verify_args.out, "report output path, - for stdout");

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustively decide a coloring property");
  oracle->add_option("graph", oracle_args.graph_path, "graph JSON file")->required();
  oracle->add_option("--lists", oracle_args.lists_path, "list assignment JSON (default {0,1})");
  oracle->add_option("--property", oracle_args.property,
                     "good, pk-free, fragmented or defective");
  oracle->add_option("--k", oracle_args.k, "bound for pk-free / fragmented");
  oracle->add_option("--max-len", oracle_args.max_len, "bound for the good property");
  oracle->add_option("--d", oracle_args.d, "bound for the defective property");
  oracle->add_option("--mode", oracle_args.mode,
                     "exists: find one coloring; forall: assert none exists");
  oracle->add_option("--budget", oracle_args.budget,
                     "search node budget (default $PLANARSPLIT_BUDGET)");
  oracle->add_flag("--no-prune", oracle_args.no_prune, "enumerate full colorings only");
  oracle->add_option("--out", oracle_args.out, "output path, - for stdout");

  StatsArgs stats_args;
  CLI::App* stats = app.add_subcommand("stats", "summarize a graph file");
  stats->add_option("graph", stats_args.graph_path, "graph JSON file")->required();
  stats->add_option("--out", stats_args.out, "report output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (oracle->parsed()) return run_oracle(oracle_args);
    if (stats->parsed()) return run_stats(stats_args);
  } catch (const Error& e) {
    report_error(e);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
