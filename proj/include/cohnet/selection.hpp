#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cohnet/graph.hpp"

namespace cohnet {

/// Which missing edges are eligible for addition.
enum class CandidatePolicy {
  BetweenSubgraphs,  // endpoints in distinct partition groups
  WithinSubgraphs,   // missing edges inside a group
  AllMissing,        // union of the two
};

const char* to_string(CandidatePolicy policy);

/// Outcome of a greedy or exhaustive edge selection.
struct SelectionResult {
  std::vector<Edge> chosen_edges;       // in selection order (greedy) or sorted (optimal)
  std::vector<double> coherence_trace;  // k+1 values, starting from the unmodified graph
  CandidatePolicy policy = CandidatePolicy::BetweenSubgraphs;
  int k = 0;
  std::uint64_t seed = 0;  // provenance only; selection itself is deterministic

  /// Largest |rank-one value - direct inversion| seen; populated only when
  /// GreedyOptions::check_rank_one was set.
  double rank_one_max_error = 0.0;

  [[nodiscard]] double final_coherence() const { return coherence_trace.back(); }
};

struct GreedyOptions {
  /// Re-derive every candidate evaluation by direct inversion and record the
  /// worst deviation (slow; for validation).
  bool check_rank_one = false;
  /// Rebuild the maintained inverse from a fresh factorization every this
  /// many committed edges to bound drift.
  int refactor_interval = 32;
};

/// Missing edges admissible under the policy. partition maps each node to
/// its subgraph index.
std::vector<Edge> candidate_edges(const Graph& g, std::span<const int> partition,
                                  CandidatePolicy policy);

/// tr[(Q + L_e)^{-1}] from the inverse of Q alone, via the rank-one update
///   tr[(Q + b b^T)^{-1}] = tr(Q^{-1}) - b^T Q^{-2} b / (1 + b^T Q^{-1} b),
/// b = indicator(u) - indicator(v). O(n) given Q^{-1}.
double evaluate_candidate(const Eigen::MatrixXd& q_inverse, Edge e);

/// Greedy minimization of the stubborn-agent coherence: k rounds, each
/// committing the candidate whose addition minimizes tr[(Q + L_e)^{-1}].
/// Value ties break to the lexicographically smallest edge.
SelectionResult greedy_select(const Graph& g, const StubbornnessProfile& d,
                              std::span<const int> partition, CandidatePolicy policy, int k,
                              const GreedyOptions& options = {});

/// Exhaustive minimization over all k-subsets of the candidates. Ties break
/// to the lexicographically smallest sorted subset. Throws
/// EnumerationBudgetError when C(|candidates|, k) exceeds the budget.
SelectionResult optimal_select(const Graph& g, const StubbornnessProfile& d,
                               std::span<const int> partition, CandidatePolicy policy, int k,
                               std::uint64_t enumeration_budget = 5'000'000);

/// H_S(greedy) / H_S(optimal) >= 1.
double greedy_optimal_ratio(const Graph& g, const StubbornnessProfile& d,
                            std::span<const int> partition, CandidatePolicy policy, int k,
                            std::uint64_t enumeration_budget = 5'000'000);

/// CSV rows "step,edge_u,edge_v,h_s"; step 0 carries the baseline value with
/// empty edge columns.
void write_selection_csv(std::ostream& out, const SelectionResult& result);

}  // namespace cohnet
