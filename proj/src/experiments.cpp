#include "cohnet/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <stdexcept>

#include "cohnet/coherence.hpp"
#include "cohnet/errors.hpp"
#include "cohnet/formulas.hpp"

namespace cohnet {

namespace {

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

std::string fmt4(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", v);
  return buffer;
}

struct TrialInstance {
  AssembledComposite composite;
  StubbornnessProfile profile;
};

StubbornnessProfile draw_profile(DMode mode, int n, std::span<const int> partition, Rng& rng) {
  if (mode == DMode::Identity) return identity_profile(n);
  // Resample until every subgraph holds a positive entry, as the stubborn
  // dynamics require.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    StubbornnessProfile d = random_stubbornness(n, rng);
    if (d.valid_for_partition(partition)) return d;
  }
  throw GenerationError("failed to draw a per-subgraph-valid stubbornness profile");
}

// Two disjoint connected ER subgraphs plus a profile; resamples the pair
// until both candidate pools can absorb k_max edges.
TrialInstance draw_pair_instance(const ExperimentConfig& cfg, DMode mode, std::uint64_t trial_seed,
                                 int k_needed, int* resamples) {
  Rng rng(trial_seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CompositeSpec spec;
    spec.subgraphs.push_back(random_connected_er(cfg.sizes, cfg.er_p, rng));
    spec.subgraphs.push_back(random_connected_er(cfg.sizes, cfg.er_p, rng));
    AssembledComposite composite = assemble(spec);
    const auto between =
        candidate_edges(composite.graph, composite.partition, CandidatePolicy::BetweenSubgraphs);
    const auto within =
        candidate_edges(composite.graph, composite.partition, CandidatePolicy::WithinSubgraphs);
    if (static_cast<int>(between.size()) < k_needed ||
        static_cast<int>(within.size()) < k_needed) {
      if (resamples) ++*resamples;
      continue;
    }
    StubbornnessProfile profile =
        draw_profile(mode, composite.graph.node_count(), composite.partition, rng);
    return TrialInstance{std::move(composite), std::move(profile)};
  }
  throw GenerationError("failed to draw a usable trial instance (seed " +
                        std::to_string(trial_seed) + ")");
}

std::vector<DMode> modes_of(const ExperimentConfig& cfg) {
  if (cfg.d_mode) return {*cfg.d_mode};
  return {DMode::Identity, DMode::RandomMixture};
}

void write_config_echo(std::ostream& out, const char* experiment, const ExperimentConfig& cfg) {
  out << "# experiment=" << experiment << '\n';
  out << "# trials=" << cfg.trials << " sizes=" << cfg.sizes.lo << ".." << cfg.sizes.hi
      << " er-p=" << fmt(cfg.er_p) << " k-max=" << cfg.k_max << " seed=" << cfg.seed;
  if (cfg.d_mode) out << " d-mode=" << to_string(*cfg.d_mode);
  out << " budget=" << cfg.enumeration_budget << '\n';
}

}  // namespace

const char* to_string(DMode mode) {
  return mode == DMode::Identity ? "identity" : "random";
}

ExperimentConfig between_vs_within_defaults() {
  ExperimentConfig cfg;
  cfg.trials = 20;
  cfg.sizes = {8, 15};
  cfg.k_max = 10;
  return cfg;
}

ExperimentConfig greedy_vs_optimal_defaults() {
  ExperimentConfig cfg;
  cfg.trials = 15;
  cfg.sizes = {4, 8};
  cfg.k_max = 3;
  return cfg;
}

std::vector<BetweenWithinRow> run_between_vs_within(const ExperimentConfig& cfg,
                                                    std::ostream* log) {
  if (cfg.trials < 1) throw std::invalid_argument("trial count must be >= 1");
  if (cfg.k_max < 1) throw std::invalid_argument("k_max must be >= 1");

  struct TrialOutcome {
    std::vector<double> between;
    std::vector<double> within;
    int resamples = 0;
  };

  std::vector<BetweenWithinRow> rows;
  for (DMode mode : modes_of(cfg)) {
    // Trials are independent workers; assembly below runs in trial order so
    // results and logs are deterministic.
    std::vector<std::future<TrialOutcome>> futures;
    for (int trial = 0; trial < cfg.trials; ++trial){
      const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
      futures.push_back(std::async(std::launch::async, [&cfg, mode, trial_seed] {
        TrialOutcome outcome;
        const TrialInstance inst =
            draw_pair_instance(cfg, mode, trial_seed, cfg.k_max, &outcome.resamples);
        outcome.between =
            greedy_select(inst.composite.graph, inst.profile, inst.composite.partition,
                          CandidatePolicy::BetweenSubgraphs, cfg.k_max)
                .coherence_trace;
        outcome.within =
            greedy_select(inst.composite.graph, inst.profile, inst.composite.partition,
                          CandidatePolicy::WithinSubgraphs, cfg.k_max)
                .coherence_trace;
        return outcome;
      }));
    }

    std::vector<double> sum_between(static_cast<std::size_t>(cfg.k_max) + 1, 0.0);
    std::vector<double> sum_within(static_cast<std::size_t>(cfg.k_max) + 1, 0.0);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const TrialOutcome outcome = futures[static_cast<std::size_t>(trial)].get();
      if (log && outcome.resamples > 0) {
        *log << "# trial seed " << cfg.seed + static_cast<std::uint64_t>(trial) << ": resampled "
             << outcome.resamples << " instance(s) with candidate pools below k-max\n";
      }
      for (int k = 0; k <= cfg.k_max; ++k) {
        sum_between[static_cast<std::size_t>(k)] += outcome.between[static_cast<std::size_t>(k)];
        sum_within[static_cast<std::size_t>(k)] += outcome.within[static_cast<std::size_t>(k)];
      }
    }
    for (int k = 0; k <= cfg.k_max; ++k) {
      rows.push_back(BetweenWithinRow{k, sum_between[static_cast<std::size_t>(k)] / cfg.trials,
                                      sum_within[static_cast<std::size_t>(k)] / cfg.trials, mode});
    }
  }
  return rows;
}

std::vector<RatioRow> run_greedy_vs_optimal(const ExperimentConfig& cfg, std::ostream* log) {
  if (cfg.trials < 1) throw std::invalid_argument("trial count must be >= 1");
  if (cfg.k_max < 1) throw std::invalid_argument("k_max must be >= 1");

  struct TrialOutcome {
    std::vector<double> ratio;  // index k; NaN where skipped
    std::vector<std::string> notes;
  };

  std::vector<RatioRow> rows;
  for (DMode mode : modes_of(cfg)) {
    std::vector<std::future<TrialOutcome>> futures;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
      futures.push_back(std::async(std::launch::async, [&cfg, mode, trial_seed] {
        TrialOutcome outcome;
        outcome.ratio.assign(static_cast<std::size_t>(cfg.k_max) + 1,
                             std::numeric_limits<double>::quiet_NaN());
        Rng rng(trial_seed);
        CompositeSpec spec;
        spec.subgraphs.push_back(random_connected_er(cfg.sizes, cfg.er_p, rng));
        spec.subgraphs.push_back(random_connected_er(cfg.sizes, cfg.er_p, rng));
        const AssembledComposite composite = assemble(spec);
        const StubbornnessProfile profile =
            draw_profile(mode, composite.graph.node_count(), composite.partition, rng);
        const auto missing =
            candidate_edges(composite.graph, composite.partition, CandidatePolicy::AllMissing);
        const int k_top = std::min<int>(cfg.k_max, static_cast<int>(missing.size()));
        const SelectionResult greedy = greedy_select(
            composite.graph, profile, composite.partition, CandidatePolicy::AllMissing, k_top);
        for (int k = 1; k <= k_top; ++k) {
          try {
            const SelectionResult best =
                optimal_select(composite.graph, profile, composite.partition,
                               CandidatePolicy::AllMissing, k, cfg.enumeration_budget);
            outcome.ratio[static_cast<std::size_t>(k)] =
                greedy.coherence_trace[static_cast<std::size_t>(k)] / best.final_coherence();
          } catch (const EnumerationBudgetError& err) {
            outcome.notes.push_back("# skipping trial seed " + std::to_string(trial_seed) +
                                    " k=" + std::to_string(k) + ": " + err.what());
          }
        }
        return outcome;
      }));
    }

    std::vector<double> sums(static_cast<std::size_t>(cfg.k_max) + 1, 0.0);
    std::vector<int> counts(static_cast<std::size_t>(cfg.k_max) + 1, 0);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const TrialOutcome outcome = futures[static_cast<std::size_t>(trial)].get();
      if (log) {
        for (const auto& message : outcome.notes) *log << message << '\n';
      }
      for (int k = 1; k <= cfg.k_max; ++k) {
        const double r = outcome.ratio[static_cast<std::size_t>(k)];
        if (std::isnan(r)) continue;
        sums[static_cast<std::size_t>(k)] += r;
        counts[static_cast<std::size_t>(k)] += 1;
      }
    }
    for (int k = 1; k <= cfg.k_max; ++k) {
      if (counts[static_cast<std::size_t>(k)] == 0) continue;
      rows.push_back(RatioRow{
          k, sums[static_cast<std::size_t>(k)] / counts[static_cast<std::size_t>(k)], mode});
    }
  }
  return rows;
}

void write_between_within_csv(std::ostream& out, const ExperimentConfig& cfg,
                              const std::vector<BetweenWithinRow>& rows) {
  write_config_echo(out, "between-vs-within", cfg);
  out << "k,mean_h_s_between,mean_h_s_within,d_mode\n";
  for (const auto& row : rows) {
    out << row.k << ',' << fmt(row.mean_between) << ',' << fmt(row.mean_within) << ','
        << to_string(row.d_mode) << '\n';
  }
}

void write_ratio_csv(std::ostream& out, const ExperimentConfig& cfg,
                     const std::vector<RatioRow>& rows) {
  write_config_echo(out, "greedy-vs-optimal", cfg);
  out << "k,mean_ratio,d_mode\n";
  for (const auto& row : rows) {
    out << row.k << ',' << fmt(row.mean_ratio) << ',' << to_string(row.d_mode) << '\n';
  }
}

CompositeSpec worked_example_spec() {
  CompositeSpec spec;
  spec.subgraphs.push_back(Graph(3, {{0, 1}, {1, 2}}));
  spec.subgraphs.push_back(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}));
  spec.bridge_nodes = std::vector<int>{1, 0};
  spec.connecting_edges.push_back({SubgraphNode{0, 1}, SubgraphNode{1, 0}});
  return spec;
}

AssembledComposite worked_example_disjoint() {
  CompositeSpec spec = worked_example_spec();
  spec.connecting_edges.clear();
  return assemble(spec);
}

WorkedExampleReport run_worked_example(int k_max) {
  const CompositeSpec spec = worked_example_spec();
  const Graph& g1 = spec.subgraphs[0];
  const Graph& g2 = spec.subgraphs[1];
  const std::vector<int>& bridges = *spec.bridge_nodes;

  WorkedExampleReport report;
  report.subgraph_resistance_1 = total_effective_resistance(g1);
  report.subgraph_resistance_2 = total_effective_resistance(g2);
  report.bridge_centrality_1 = resistance_centrality(g1, bridges[0]);
  report.bridge_centrality_2 = resistance_centrality(g2, bridges[1]);

  const SubgraphSummary summaries[2] = {summarize(g1, bridges[0]), summarize(g2, bridges[1])};
  Eigen::MatrixXd bridge_r(2, 2);
  bridge_r << 0.0, 1.0, 1.0, 0.0;
  report.composite_coherence = composite_coherence(summaries, bridge_r);
  report.composite_coherence_numeric = coherence_consensus(assemble(spec).graph);

  const AssembledComposite disjoint = worked_example_disjoint();
  const StubbornnessProfile identity = identity_profile(disjoint.graph.node_count());
  report.greedy = greedy_select(disjoint.graph, identity, disjoint.partition,
                                CandidatePolicy::BetweenSubgraphs, k_max);
  for (int k = 1; k <= k_max; ++k) {
    report.optimal.push_back(optimal_select(disjoint.graph, identity, disjoint.partition,
                                            CandidatePolicy::BetweenSubgraphs, k));
  }
  return report;
}

namespace {

std::string edge_set_label(std::span<const Edge> edges) {
  std::string out;
  for (const Edge& e : edges) {
    if (!out.empty()) out += ' ';
    // 1-based labels, matching the node names in the drawing.
    out += "(" + std::to_string(e.first + 1) + "," + std::to_string(e.second + 1) + ")";
  }
  return out.empty() ? "{}" : out;
}

}  // namespace

void print_worked_example(std::ostream& out, const WorkedExampleReport& report) {
  out << "Worked example: path subgraph {1,2,3} and subgraph {4,...,7}, bridge edge (2,4)\n";
  out << "  R_1 = " << fmt4(report.subgraph_resistance_1)
      << "  R_2 = " << fmt4(report.subgraph_resistance_2) << '\n';
  out << "  C_1(l_1) = " << fmt4(report.bridge_centrality_1)
      << "  C_2(l_2) = " << fmt4(report.bridge_centrality_2) << '\n';
  out << "  H_C = " << fmt4(report.composite_coherence)
      << "  (numeric check: " << fmt4(report.composite_coherence_numeric) << ")\n";
  out << "Edge selection on the disjoint pair, d_j = 1 everywhere:\n";
  out << "  k | greedy edges            | H_S     | optimal edges           | H_S*\n";
  for (std::size_t k = 1; k <= report.optimal.size(); ++k) {
    std::span<const Edge> greedy_prefix(report.greedy.chosen_edges.data(), k);
    const SelectionResult& best = report.optimal[k - 1];
    char line[160];
    std::snprintf(line, sizeof(line), "  %zu | %-23s | %s | %-23s | %s\n", k,
                  edge_set_label(greedy_prefix).c_str(),
                  fmt4(report.greedy.coherence_trace[k]).c_str(),
                  edge_set_label(best.chosen_edges).c_str(),
                  fmt4(best.final_coherence()).c_str());
    out << line;
  }
}

void write_worked_example_csv(std::ostream& out, const WorkedExampleReport& report) {
  out << "# worked-example\n";
  out << "k,greedy_edges,greedy_h_s,optimal_edges,optimal_h_s\n";
  for (std::size_t k = 1; k <= report.optimal.size(); ++k) {
    std::span<const Edge> greedy_prefix(report.greedy.chosen_edges.data(), k);
    const SelectionResult& best = report.optimal[k - 1];
    out << k << ',' << edge_set_label(greedy_prefix) << ','
        << fmt(report.greedy.coherence_trace[k]) << ',' << edge_set_label(best.chosen_edges)
        << ',' << fmt(best.final_coherence()) << '\n';
  }
}

CompositeSpec uniform_composite(int n, const Graph& subgraph, int bridge_node,
                                const std::vector<Edge>& backbone_edges) {
  CompositeSpec spec;
  spec.subgraphs.assign(static_cast<std::size_t>(n), subgraph);
  spec.bridge_nodes = std::vector<int>(static_cast<std::size_t>(n), bridge_node);
  for (const auto& [i, j] : backbone_edges) {
    spec.connecting_edges.push_back(
        {SubgraphNode{i, bridge_node}, SubgraphNode{j, bridge_node}});
  }
  return spec;
}

BoundsReport run_bounds(int n, int m, int max_numeric_nodes) {
  const LowerBound low = lower_bound(n, m);
  BoundsReport report;
  report.n = n;
  report.m = m;
  report.published_lower = low.published;
  report.corrected_lower = low.corrected;
  report.upper = upper_bound(n, m);

  if (n * m <= max_numeric_nodes) {
    std::vector<Edge> complete_sub;
    for (int u = 0; u < m; ++u) {
      for (int v = u + 1; v < m; ++v) complete_sub.emplace_back(u, v);
    }
    std::vector<Edge> complete_backbone;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) complete_backbone.emplace_back(i, j);
    }
    report.complete_composite = coherence_consensus(
        assemble(uniform_composite(n, Graph(m, complete_sub), 0, complete_backbone)).graph);

    std::vector<Edge> path_sub;
    for (int u = 0; u + 1 < m; ++u) path_sub.emplace_back(u, u + 1);
    std::vector<Edge> line_backbone;
    for (int i = 0; i + 1 < n; ++i) line_backbone.emplace_back(i, i + 1);
    report.line_composite = coherence_consensus(
        assemble(uniform_composite(n, Graph(m, path_sub), 0, line_backbone)).graph);
  }
  return report;
}

void print_bounds(std::ostream& out, const BoundsReport& report) {
  out << "Coherence bounds for " << report.n << " subgraphs of size " << report.m << ":\n";
  out << "  lower bound (corrected) = " << fmt(report.corrected_lower) << '\n';
  out << "  lower bound (as published) = " << fmt(report.published_lower)
      << "  [known erratum: factor 2 on the backbone term]\n";
  out << "  upper bound = " << fmt(report.upper) << '\n';
  if (report.complete_composite) {
    out << "  complete-subgraph composite (numeric) = " << fmt(*report.complete_composite)
        << '\n';
  }
  if (report.line_composite) {
    out << "  path-subgraph line composite (numeric) = " << fmt(*report.line_composite) << '\n';
  }
}

}  // namespace cohnet
