#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cohnet/graph.hpp"
#include "cohnet/selection.hpp"

namespace cohnet {

enum class DMode { Identity, RandomMixture };

const char* to_string(DMode mode);

/// Settings shared by the randomized experiment drivers. Per-trial seeds are
/// derived as seed + trial index, so runs are reproducible and trials are
/// independent.
struct ExperimentConfig {
  int trials = 20;
  SizeRange sizes{8, 15};
  double er_p = 0.3;
  int k_max = 10;
  std::uint64_t seed = 1;
  std::optional<DMode> d_mode;  // unset: run both
  std::uint64_t enumeration_budget = 5'000'000;
};

/// 20 trials of two connected G(n, 0.3) subgraphs with n in [8, 15].
ExperimentConfig between_vs_within_defaults();

/// 15 trials at sizes [4, 8], k up to 3 (exhaustive baseline stays feasible).
ExperimentConfig greedy_vs_optimal_defaults();

struct BetweenWithinRow {
  int k = 0;
  double mean_between = 0.0;
  double mean_within = 0.0;
  DMode d_mode = DMode::Identity;
};

/// For each trial, greedily adds k_max edges under the between-subgraphs and
/// within-subgraphs policies on the same instance and averages the two
/// coherence traces across trials. `log` receives resample notices.
std::vector<BetweenWithinRow> run_between_vs_within(const ExperimentConfig& cfg,
                                                    std::ostream* log = nullptr);

struct RatioRow {
  int k = 0;
  double mean_ratio = 0.0;
  DMode d_mode = DMode::Identity;
};

/// Greedy versus exhaustive-optimal coherence ratio per k, averaged over
/// trials, with all missing edges as candidates. Instances whose enumeration
/// would blow the budget are skipped and logged.
std::vector<RatioRow> run_greedy_vs_optimal(const ExperimentConfig& cfg,
                                            std::ostream* log = nullptr);

void write_between_within_csv(std::ostream& out, const ExperimentConfig& cfg,
                              const std::vector<BetweenWithinRow>& rows);
void write_ratio_csv(std::ostream& out, const ExperimentConfig& cfg,
                     const std::vector<RatioRow>& rows);

// ---------------------------------------------------------------------------
// Built-in worked example: a 3-node path bridged to a 4-node subgraph.
// ---------------------------------------------------------------------------

/// The bridged composite (bridge nodes 2 and 4 in 1-based labels, joined by
/// one edge).
CompositeSpec worked_example_spec();

/// The same two subgraphs with no connecting edges, as fed to edge selection.
AssembledComposite worked_example_disjoint();

struct WorkedExampleReport {
  double subgraph_resistance_1 = 0.0;  // Kirchhoff index of the path subgraph
  double subgraph_resistance_2 = 0.0;
  double bridge_centrality_1 = 0.0;
  double bridge_centrality_2 = 0.0;
  double composite_coherence = 0.0;     // via the closed-form composite formula
  double composite_coherence_numeric = 0.0;  // via the Laplacian pseudo-inverse
  SelectionResult greedy;                    // k steps on the disjoint pair, D = I
  std::vector<SelectionResult> optimal;      // exhaustive baseline for k = 1..k_max
};

WorkedExampleReport run_worked_example(int k_max = 3);

/// Human-readable report plus the greedy/optimal table; edges printed with
/// 1-based labels.
void print_worked_example(std::ostream& out, const WorkedExampleReport& report);
void write_worked_example_csv(std::ostream& out, const WorkedExampleReport& report);

// ---------------------------------------------------------------------------
// Coherence bounds report
// ---------------------------------------------------------------------------

struct BoundsReport {
  int n = 0;
  int m = 0;
  double published_lower = 0.0;
  double corrected_lower = 0.0;
  double upper = 0.0;
  // Numeric coherence of the two extremal composites, when n*m is small
  // enough to materialize them.
  std::optional<double> complete_composite;  // complete subgraphs, complete backbone
  std::optional<double> line_composite;      // path subgraphs bridged at endpoints, line backbone
};

BoundsReport run_bounds(int n, int m, int max_numeric_nodes = 600);
void print_bounds(std::ostream& out, const BoundsReport& report);

/// Uniform composite of n copies of `subgraph` with a given backbone on
/// designated bridge nodes; used by the bounds report and tests.
CompositeSpec uniform_composite(int n, const Graph& subgraph, int bridge_node,
                                const std::vector<Edge>& backbone_edges);

}  // namespace cohnet
