#pragma once

#include <Eigen/Core>

#include "cohnet/graph.hpp"

namespace cohnet {

/// Pairwise resistance distances r(u,v) of a connected graph whose edges are
/// unit resistors. Symmetric with zero diagonal; satisfies the triangle
/// inequality and r(u,v) <= d(u,v) with equality iff the u-v path is unique.
struct ResistanceMatrix {
  Eigen::MatrixXd values;

  /// Sum of distances from v to every other node.
  [[nodiscard]] double centrality(int v) const;
};

/// tr L^\dagger: sum of reciprocals of the nonzero Laplacian eigenvalues.
/// Eigenvalues below n * eps * lambda_max count as zero; two or more zeros
/// mean the graph is disconnected and raise DisconnectedGraphError.
double pseudo_inverse_trace(const Eigen::MatrixXd& lap);

/// Same quantity through the algebraically independent route
/// tr[(L + J/n)^{-1}] - 1, valid for connected graphs. Kept as a
/// cross-check against the spectral path.
double pseudo_inverse_trace_shifted(const Eigen::MatrixXd& lap);

/// Moore-Penrose pseudo-inverse of a Laplacian via symmetric
/// eigendecomposition. Throws DisconnectedGraphError as above.
Eigen::MatrixXd laplacian_pseudo_inverse(const Eigen::MatrixXd& lap);

/// Consensus coherence: total steady-state variance of deviations from the
/// network average under unit white noise, equal to tr(L^\dagger) / 2.
double coherence_consensus(const Graph& g);

ResistanceMatrix resistance_matrix(const Graph& g);

/// Kirchhoff index: sum of r(u,v) over unordered pairs. Equals
/// 2 * node_count * coherence_consensus.
double total_effective_resistance(const Graph& g);

/// C(v) = sum_{u != v} r(u,v).
double resistance_centrality(const Graph& g, int v);

/// Node minimizing resistance centrality; ties broken by lowest index.
int min_centrality_node(const Graph& g);

/// Verifies that L + diag(d) is positive definite, i.e. every connected
/// component of g contains a node with d_j > 0. Throws SingularSystemError
/// naming the offending component otherwise.
void check_stubborn_validity(const Graph& g, const StubbornnessProfile& d);

/// Stubborn-agent coherence tr(Q^{-1}) / 2 with Q = L + diag(d).
/// Defined for disconnected graphs as long as each component carries a
/// positive entry of d.
double coherence_stubborn(const Graph& g, const StubbornnessProfile& d);

/// Same value through the leader-augmented construction: add a node s with
/// an edge of weight d_j from every node j, form the weighted Laplacian,
/// ground s (delete its row and column) and take half the trace of the
/// inverse. Serves as an independent path to coherence_stubborn.
double grounded_laplacian_coherence(const Graph& g, const StubbornnessProfile& d);

}  // namespace cohnet
