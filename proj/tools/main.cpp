// Command-line front end: coherence reports, the randomized experiment
// drivers, the built-in worked example, bounds, and Monte Carlo checks.
//
// Exit codes: 0 success, 1 input error, 2 numerical failure, 3 enumeration
// budget exceeded.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cohnet/coherence.hpp"
#include "cohnet/errors.hpp"
#include "cohnet/experiments.hpp"
#include "cohnet/graph.hpp"
#include "cohnet/io.hpp"
#include "cohnet/simulate.hpp"

namespace {

namespace fs = std::filesystem;
using namespace cohnet;

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

struct CliSettings {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int trials = -1;  // -1: experiment default
  int k_max = -1;
  double er_p = 0.3;
  std::optional<DMode> d_mode;
  std::uint64_t budget = 5'000'000;
  // simulate overrides
  double dt = 0.0;
  double burn_in = 0.0;
  double sample_time = 0.0;
  int sim_trials = 8;
};

ExperimentConfig make_config(const CliSettings& s, ExperimentConfig cfg) {
  cfg.seed = s.seed;
  cfg.er_p = s.er_p;
  cfg.d_mode = s.d_mode;
  cfg.enumeration_budget = s.budget;
  if (s.trials > 0) cfg.trials = s.trials;
  if (s.k_max > 0) cfg.k_max = s.k_max;
  return cfg;
}

std::ofstream open_output(const CliSettings& s, const std::string& filename) {
  fs::create_directories(s.out_dir);
  const fs::path path = fs::path(s.out_dir) / filename;
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file " + path.string());
  std::cout << "writing " << path.string() << "\n";
  return out;
}

int cmd_coherence(const std::string& graph_file, const std::string& profile_file) {
  const Graph g = read_graph_file(graph_file);
  const bool connected = is_connected(g);

  if (!connected && profile_file.empty()) {
    std::cerr << "coherence undefined: graph disconnected\n";
    return 2;
  }
  std::cout << "nodes " << g.node_count() << ", edges " << g.edge_count() << "\n";
  if (connected) {
    std::cout << "H_C = " << fmt(coherence_consensus(g)) << "\n";
    std::cout << "total effective resistance = " << fmt(total_effective_resistance(g)) << "\n";
    const ResistanceMatrix r = resistance_matrix(g);
    std::cout << "resistance centrality per node:\n";
    for (int v = 0; v < g.node_count(); ++v) {
      std::cout << "  " << v << ": " << fmt(r.centrality(v)) << "\n";
    }
    std::cout << "min-centrality node = " << min_centrality_node(g) << "\n";
  } else {
    std::cout << "H_C undefined: graph disconnected\n";
  }
  if (!profile_file.empty()) {
    const StubbornnessProfile d = read_profile_file(profile_file);
    std::cout << "H_S = " << fmt(coherence_stubborn(g, d)) << "\n";
  }
  return 0;
}

int cmd_between_vs_within(const CliSettings& s) {
  const ExperimentConfig cfg = make_config(s, between_vs_within_defaults());
  const auto rows = run_between_vs_within(cfg, &std::cerr);
  auto out = open_output(s, "between_vs_within.csv");
  write_between_within_csv(out, cfg, rows);
  return 0;
}

int cmd_greedy_vs_optimal(const CliSettings& s) {
  const ExperimentConfig cfg = make_config(s, greedy_vs_optimal_defaults());
  const auto rows = run_greedy_vs_optimal(cfg, &std::cerr);
  auto out = open_output(s, "greedy_vs_optimal.csv");
  write_ratio_csv(out, cfg, rows);
  return 0;
}

int cmd_paper_example(const CliSettings& s, bool write_csv) {
  const WorkedExampleReport report = run_worked_example();
  print_worked_example(std::cout, report);
  if (write_csv) {
    auto out = open_output(s, "paper_example.csv");
    write_worked_example_csv(out, report);
  }
  return 0;
}

int cmd_bounds(int n, int m) {
  print_bounds(std::cout, run_bounds(n, m));
  return 0;
}

int cmd_simulate(const CliSettings& s, const std::string& graph_file,
                 const std::string& profile_file, bool write_csv) {
  const Graph g = read_graph_file(graph_file);
  SimulationConfig cfg;
  cfg.time_step = s.dt;
  cfg.burn_in_time = s.burn_in;
  cfg.sample_time = s.sample_time;
  cfg.trial_count = s.sim_trials;
  cfg.rng_seed = s.seed;

  double analytic = 0.0;
  SimulationEstimate est;
  if (profile_file.empty()) {
    analytic = coherence_consensus(g);
    est = simulate_consensus_coherence(g, cfg);
    std::cout << "measure = H_C (consensus)\n";
  } else {
    const StubbornnessProfile d = read_profile_file(profile_file);
    analytic = coherence_stubborn(g, d);
    est = simulate_stubborn_coherence(g, d, cfg);
    std::cout << "measure = H_S (stubborn)\n";
  }
  const double z = (est.value - analytic) / est.std_error;
  std::cout << "analytic = " << fmt(analytic) << "\n";
  std::cout << "estimate = " << fmt(est.value) << "\n";
  std::cout << "std_error = " << fmt(est.std_error) << "\n";
  std::cout << "z = " << fmt(z) << "\n";
  std::cout << "dt = " << fmt(est.time_step) << ", burn_in = " << fmt(est.burn_in_time)
            << ", sample_time = " << fmt(est.sample_time) << ", trials = " << est.trial_count
            << "\n";
  if (write_csv) {
    auto out = open_output(s, "simulate.csv");
    write_simulation_csv(out, analytic, est, cfg.rng_seed);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence analysis and edge selection for composite networks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file; keys match flag names");

  CliSettings s;
  app.add_option("--seed", s.seed, "RNG seed");
  app.add_option("--out", s.out_dir, "output directory for CSV files");
  app.add_option("--trials", s.trials, "trial count override");
  app.add_option("--k-max", s.k_max, "edges to add");
  app.add_option("--er-p", s.er_p, "Erdos-Renyi edge probability");
  app.add_option("--budget", s.budget, "exhaustive enumeration budget");
  std::map<std::string, DMode> dmode_map{{"identity", DMode::Identity},
                                         {"random", DMode::RandomMixture}};
  app.add_option("--d-mode", s.d_mode, "stubbornness mode (default: both)")
      ->transform(CLI::CheckedTransformer(dmode_map, CLI::ignore_case));

  auto* coherence_cmd = app.add_subcommand("coherence", "report coherence of a graph file");
  std::string graph_file;
  std::string profile_file;
  coherence_cmd->add_option("graph", graph_file, "graph file")->required();
  coherence_cmd->add_option("--profile", profile_file, "stubbornness profile file");

  auto* between_cmd = app.add_subcommand(
      "between-vs-within", "average greedy coherence, edges between vs within subgraphs");
  auto* ratio_cmd = app.add_subcommand(
      "greedy-vs-optimal", "average greedy/optimal coherence ratio per k");
  auto* example_cmd =
      app.add_subcommand("paper-example", "run the built-in worked example and its table");
  bool example_csv = false;
  example_cmd->add_flag("--csv", example_csv, "also write paper_example.csv to --out");

  auto* bounds_cmd = app.add_subcommand("bounds", "coherence bounds for uniform composites");
  int bound_n = 0;
  int bound_m = 0;
  bounds_cmd->add_option("n", bound_n, "number of subgraphs")->required();
  bounds_cmd->add_option("m", bound_m, "uniform subgraph size")->required();

  auto* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo coherence estimate vs the analytic value");
  std::string sim_graph_file;
  std::string sim_profile_file;
  simulate_cmd->add_option("graph", sim_graph_file, "graph file")->required();
  simulate_cmd->add_option("--profile", sim_profile_file,
                           "stubbornness profile (switches to the H_S measure)");
  simulate_cmd->add_option("--dt", s.dt, "time step (default 0.01/lambda_max)");
  simulate_cmd->add_option("--burn-in", s.burn_in, "burn-in time (default 10/lambda_min)");
  simulate_cmd->add_option("--sample-time", s.sample_time,
                           "sampling time (default 200/lambda_min)");
  simulate_cmd->add_option("--sim-trials", s.sim_trials, "independent trials");
  bool simulate_csv = false;
  simulate_cmd->add_flag("--csv", simulate_csv, "also write simulate.csv to --out");

  // Global options may appear after the subcommand name.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (coherence_cmd->parsed()) return cmd_coherence(graph_file, profile_file);
    if (between_cmd->parsed()) return cmd_between_vs_within(s);
    if (ratio_cmd->parsed()) return cmd_greedy_vs_optimal(s);
    if (example_cmd->parsed()) return cmd_paper_example(s, example_csv);
    if (bounds_cmd->parsed()) return cmd_bounds(bound_n, bound_m);
    if (simulate_cmd->parsed()) {
      return cmd_simulate(s, sim_graph_file, sim_profile_file, simulate_csv);
    }
  } catch (const EnumerationBudgetError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  } catch (const NumericalError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
