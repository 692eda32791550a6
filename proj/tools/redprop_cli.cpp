// redprop: solve benchmark models, analyze redundancy, print comparison rows.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "redprop/redprop.hpp"

namespace {

using namespace redprop;

struct Opts {
  std::string problem;
  int m = 0, n = 0, g = 0, s = 0, w = 0;
  std::string instance;
  std::string variant = "full";
  std::vector<std::string> variants{"mx", "my", "full", "opt"};
  std::vector<std::string> search_vars{"x"};
  std::string mode;
  std::string format = "table";
  std::size_t cap = 0;
  std::size_t node_limit = 0;
  bool no_pairs = false;
};

void add_problem(CLI::App* app, Opts& o) {
  app->add_option("--problem", o.problem, "langford | all_interval | queens | golfers | bacp")->required();
  app->add_option("--m", o.m, "langford: copies per digit");
  app->add_option("--n", o.n, "langford: digits; all_interval, queens: size");
  app->add_option("--g", o.g, "golfers: groups");
  app->add_option("--s", o.s, "golfers: group size");
  app->add_option("--w", o.w, "golfers: weeks");
  app->add_option("--instance", o.instance, "bacp: instance file (default: built-in desk instance)");
  app->add_option("--cap", o.cap, "enumeration cap (overrides REDPROP_CAP)");
}

ProblemSpec problem_spec(const Opts& o) {
  ProblemSpec spec{o.problem, {}, std::nullopt};
  if (o.problem == "langford") spec.params = {o.m, o.n};
  else if (o.problem == "all_interval" || o.problem == "queens") spec.params = {o.n};
  else if (o.problem == "golfers") spec.params = {o.g, o.s, o.w};
  else if (o.problem == "bacp") spec.bacp = o.instance.empty() ? bacp_desk() : load_bacp(o.instance);
  else throw InvalidParams("unknown problem '" + o.problem + "'");
  return spec;
}

SearchMode mode_for(const Opts& o) {
  if (!o.mode.empty()) return parse_mode(o.mode);
  return o.problem == "bacp" ? SearchMode::Optimize : SearchMode::All;
}

void print_rows(const std::vector<RunRow>& rows, const std::string& format) {
  if (format == "csv") std::cout << rows_to_csv(rows);
  else std::cout << rows_to_table(rows);
}

int run_solve(const Opts& o) {
  ProblemSpec spec = problem_spec(o);
  std::vector<RunRow> rows;
  for (const auto& sel : o.search_vars) rows.push_back(run(spec, o.variant, sel, mode_for(o), o.node_limit));
  print_rows(rows, o.format);
  return 0;
}

int run_bench(const Opts& o) {
  ProblemSpec spec = problem_spec(o);
  std::vector<RunRow> rows;
  for (const auto& v : o.variants)
    for (const auto& sel : o.search_vars) rows.push_back(run(spec, v, sel, mode_for(o), o.node_limit));
  print_rows(rows, o.format);
  return 0;
}

int run_analyze(const Opts& o) {
  ProblemSpec spec = problem_spec(o);
  CombinedModel cm = combined(spec);
  AnalysisBudget budget;
  budget.pairs = !o.no_pairs;
  if (o.cap) budget.cap = o.cap;
  RedundancyReport rep = analyze_model(cm, budget);
  if (o.format == "csv") {
    std::cout << "id,side,status,method,removed,witnesses\n";
    for (const auto& e : rep.entries) {
      std::string ws;
      for (const auto& id : e.verdict.witness_ids) ws += (ws.empty() ? "" : " ") + id;
      std::cout << detail::csv_field(e.id) << ',' << e.side << ',' << status_name(e.verdict.status) << ','
                << (e.verdict.method ? method_name(*e.verdict.method) : "") << ',' << (e.removed ? 1 : 0) << ','
                << detail::csv_field(ws) << '\n';
    }
  } else if (o.format == "lines") {
    std::cout << rep.lines();
  } else {
    std::cout << rep.table();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-domain and set-bounds propagation engine with a redundancy analyzer"};
  app.require_subcommand(1);
  Opts o;

  auto* solve = app.add_subcommand("solve", "search one variant and print its statistics");
  add_problem(solve, o);
  solve->add_option("--variant", o.variant, "mx, my, full, opt, pr, pr_full, pr_opt, iy4, part");
  solve->add_option("--search-vars", o.search_vars, "x, y or both (comma separated for several rows)")->delimiter(',');
  solve->add_option("--mode", o.mode, "first | all | optimize (default: optimize for bacp, else all)");
  solve->add_option("--node-limit", o.node_limit, "stop after this many nodes (0 = none)");
  solve->add_option("--format", o.format, "table | csv")->check(CLI::IsMember({"table", "csv"}));

  auto* analyze = app.add_subcommand("analyze", "classify every constraint of the combined model");
  add_problem(analyze, o);
  analyze->add_flag("--no-pairs", o.no_pairs, "skip pairs of witnesses");
  analyze->add_option("--format", o.format, "table | csv | lines")->check(CLI::IsMember({"table", "csv", "lines"}));

  auto* bench = app.add_subcommand("bench", "one row per (variant, search vars)");
  add_problem(bench, o);
  bench->add_option("--variants", o.variants, "comma separated variants")->delimiter(',');
  bench->add_option("--search-vars", o.search_vars, "comma separated selectors")->delimiter(',');
  bench->add_option("--mode", o.mode, "first | all | optimize");
  bench->add_option("--node-limit", o.node_limit, "per-run node limit (0 = none)");
  bench->add_option("--format", o.format, "table | csv")->check(CLI::IsMember({"table", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (o.cap) setenv("REDPROP_CAP", std::to_string(o.cap).c_str(), 1);
    if (*solve) return run_solve(o);
    if (*analyze) return run_analyze(o);
    return run_bench(o);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return 3;
  } catch (const redprop::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
