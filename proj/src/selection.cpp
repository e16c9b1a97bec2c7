#include "cohnet/selection.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cohnet/coherence.hpp"
#include "cohnet/errors.hpp"

namespace cohnet {

namespace {

// Slack for treating two candidate values as tied (and for the strict
// monotone-decrease check).
constexpr double kValueSlack = 1e-12;

Eigen::MatrixXd build_q(const Graph& g, const StubbornnessProfile& d) {
  Eigen::MatrixXd q = laplacian(g);
  for (int j = 0; j < d.size(); ++j) q(j, j) += d.values[static_cast<std::size_t>(j)];
  return q;
}

Eigen::MatrixXd invert_spd(const Eigen::MatrixXd& q) {
  Eigen::LLT<Eigen::MatrixXd> llt(q);
  if (llt.info() != Eigen::Success) {
    throw SingularSystemError("Q is not positive definite");
  }
  return llt.solve(Eigen::MatrixXd::Identity(q.rows(), q.cols()));
}

// Applies the Sherman-Morrison update for Q <- Q + b b^T in place.
void commit_edge(Eigen::MatrixXd& q, Eigen::MatrixXd& q_inverse, Edge e) {
  const auto [u, v] = e;
  const Eigen::VectorXd y = q_inverse.col(u) - q_inverse.col(v);
  const double denom = 1.0 + y(u) - y(v);
  q_inverse.noalias() -= (y * y.transpose()) / denom;
  q(u, u) += 1.0;
  q(v, v) += 1.0;
  q(u, v) -= 1.0;
  q(v, u) -= 1.0;
}

struct Candidates {
  std::vector<Edge> edges;
};

void append_decreasing(std::vector<double>& trace, double half_trace) {
  if (!trace.empty() && half_trace > trace.back() + kValueSlack) {
    throw NumericalError("coherence failed to decrease when adding an edge (" +
                         std::to_string(trace.back()) + " -> " + std::to_string(half_trace) +
                         "); numerical breakdown");
  }
  trace.push_back(half_trace);
}

}  // namespace

const char* to_string(CandidatePolicy policy) {
  switch (policy) {
    case CandidatePolicy::BetweenSubgraphs: return "between-subgraphs";
    case CandidatePolicy::WithinSubgraphs: return "within-subgraphs";
    case CandidatePolicy::AllMissing: return "all-missing";
  }
  return "unknown";
}

std::vector<Edge> candidate_edges(const Graph& g, std::span<const int> partition,
                                  CandidatePolicy policy) {
  const int n = g.node_count();
  if (static_cast<int>(partition.size()) != n) {
    throw std::invalid_argument("partition size does not match node count");
  }
  std::vector<Edge> out;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const bool between = partition[static_cast<std::size_t>(u)] !=
                           partition[static_cast<std::size_t>(v)];
      const bool wanted = policy == CandidatePolicy::AllMissing ||
                          (policy == CandidatePolicy::BetweenSubgraphs && between) ||
                          (policy == CandidatePolicy::WithinSubgraphs && !between);
      if (wanted && !g.has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

double evaluate_candidate(const Eigen::MatrixXd& q_inverse, Edge e) {
  const auto [u, v] = make_edge(e.first, e.second);
  if (v >= q_inverse.rows()) throw std::invalid_argument("edge endpoint out of range");
  const Eigen::VectorXd y = q_inverse.col(u) - q_inverse.col(v);
  const double quad = y(u) - y(v);  // b^T Q^{-1} b > 0 for PD Q
  return q_inverse.trace() - y.squaredNorm() / (1.0 + quad);
}

SelectionResult greedy_select(const Graph& g, const StubbornnessProfile& d,
                              std::span<const int> partition, CandidatePolicy policy, int k,
                              const GreedyOptions& options) {
  check_stubborn_validity(g, d);
  std::vector<Edge> candidates = candidate_edges(g, partition, policy);
  if (k < 0 || k > static_cast<int>(candidates.size())) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(candidates.size()) + " available candidates");
  }

  Eigen::MatrixXd q = build_q(g, d);
  Eigen::MatrixXd q_inverse = invert_spd(q);

  SelectionResult result;
  result.policy = policy;
  result.k = k;
  result.coherence_trace.push_back(0.5 * q_inverse.trace());

  int commits_since_refactor = 0;
  for (int round = 0; round < k; ++round) {
    double best_value = std::numeric_limits<double>::infinity();
    Edge best_edge{-1, -1};
    for (const Edge& e : candidates) {
      const double value = evaluate_candidate(q_inverse, e);
      if (options.check_rank_one) {
        const Eigen::MatrixXd direct =
            q + edge_laplacian(static_cast<int>(q.rows()), e);
        const double exact = invert_spd(direct).trace();
        result.rank_one_max_error =
            std::max(result.rank_one_max_error, std::abs(value - exact));
      }
      if (value < best_value - kValueSlack ||
          (value <= best_value + kValueSlack && e < best_edge)) {
        best_value = value;
        best_edge = e;
      }
    }

    commit_edge(q, q_inverse, best_edge);
    if (++commits_since_refactor >= options.refactor_interval) {
      q_inverse = invert_spd(q);
      best_value = q_inverse.trace();
      commits_since_refactor = 0;
    }
    result.chosen_edges.push_back(best_edge);
    candidates.erase(std::find(candidates.begin(), candidates.end(), best_edge));
    append_decreasing(result.coherence_trace, 0.5 * best_value);
  }
  return result;
}

SelectionResult optimal_select(const Graph& g, const StubbornnessProfile& d,
                               std::span<const int> partition, CandidatePolicy policy, int k,
                               std::uint64_t enumeration_budget) {
  check_stubborn_validity(g, d);
  const std::vector<Edge> candidates = candidate_edges(g, partition, policy);
  const int count = static_cast<int>(candidates.size());
  if (k < 0 || k > count) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(count) + " available candidates");
  }

  double subsets = 1.0;
  for (int i = 0; i < k; ++i) subsets = subsets * (count - i) / (i + 1);
  if (subsets > static_cast<double>(enumeration_budget)) {
    char approx[32];
    std::snprintf(approx, sizeof(approx), "%.4g", subsets);
    throw EnumerationBudgetError("exhaustive selection would enumerate ~" + std::string(approx) +
                                 " subsets (budget " + std::to_string(enumeration_budget) +
                                 "); use a smaller instance or raise the budget");
  }

  const Eigen::MatrixXd q0 = build_q(g, d);
  const Eigen::MatrixXd m0 = invert_spd(q0);

  double best_value = std::numeric_limits<double>::infinity();
  std::vector<Edge> best_set;
  std::vector<Edge> chosen;

  // Depth-first enumeration in lexicographic order; prefixes share their
  // rank-one-updated inverse, leaves only need the O(n) evaluation. The
  // first minimum encountered is the lexicographically smallest tie.
  auto dfs = [&](auto&& self, int start, const Eigen::MatrixXd& q_inverse) -> void {
    const int depth = static_cast<int>(chosen.size());
    for (int i = start; i < count; ++i) {
      if (count - i < k - depth) break;
      const Edge e = candidates[static_cast<std::size_t>(i)];
      if (depth + 1 == k) {
        const double value = evaluate_candidate(q_inverse, e);
        if (value < best_value - kValueSlack) {
          best_value = value;
          best_set = chosen;
          best_set.push_back(e);
        }
      } else {
        Eigen::MatrixXd next = q_inverse;
        const auto [u, v] = e;
        const Eigen::VectorXd y = next.col(u) - next.col(v);
        next.noalias() -= (y * y.transpose()) / (1.0 + y(u) - y(v));
        chosen.push_back(e);
        self(self, i + 1, next);
        chosen.pop_back();
      }
    }
  };

  SelectionResult result;
  result.policy = policy;
  result.k = k;
  result.coherence_trace.push_back(0.5 * m0.trace());
  if (k > 0) {
    dfs(dfs, 0, m0);
    // Replay the winning subset to produce the per-step trace with the same
    // arithmetic the search used.
    Eigen::MatrixXd q = q0;
    Eigen::MatrixXd q_inverse = m0;
    for (const Edge& e : best_set) {
      const double value = evaluate_candidate(q_inverse, e);
      commit_edge(q, q_inverse, e);
      append_decreasing(result.coherence_trace, 0.5 * value);
    }
    result.chosen_edges = best_set;
  }
  return result;
}

double greedy_optimal_ratio(const Graph& g, const StubbornnessProfile& d,
                            std::span<const int> partition, CandidatePolicy policy, int k,
                            std::uint64_t enumeration_budget) {
  const SelectionResult greedy = greedy_select(g, d, partition, policy, k);
  const SelectionResult best = optimal_select(g, d, partition, policy, k, enumeration_budget);
  return greedy.final_coherence() / best.final_coherence();
}

void write_selection_csv(std::ostream& out, const SelectionResult& result) {
  out << "step,edge_u,edge_v,h_s\n";
  char buffer[64];
  for (std::size_t step = 0; step < result.coherence_trace.size(); ++step) {
    std::snprintf(buffer, sizeof(buffer), "%.12g", result.coherence_trace[step]);
    if (step == 0) {
      out << "0,,," << buffer << '\n';
    } else {
      const Edge& e = result.chosen_edges[step - 1];
      out << step << ',' << e.first << ',' << e.second << ',' << buffer << '\n';
    }
  }
}

}  // namespace cohnet
