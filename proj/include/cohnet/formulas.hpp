#pragma once

#include <Eigen/Core>
#include <span>
#include <variant>
#include <vector>

#include "cohnet/graph.hpp"

namespace cohnet {

/// The three per-subgraph quantities the composite coherence formula needs.
struct SubgraphSummary {
  int size = 0;                    // node count
  double coherence = 0.0;          // consensus coherence of the subgraph
  double bridge_centrality = 0.0;  // resistance centrality of its bridge node

  bool operator==(const SubgraphSummary&) const = default;
};

/// Computes the summary of one subgraph for a given bridge node.
SubgraphSummary summarize(const Graph& g, int bridge_node);

/// Coherence of a composite graph in the single-bridge regime:
///
///   (1 / 2N) [ sum_i 2 n_i H_i  +  sum_{i<j} n_i n_j r(l_i, l_j)
///              + sum_i (N - n_i) C_i(l_i) ]
///
/// where bridge_resistances(i, j) is the resistance distance between bridge
/// nodes i and j across the backbone.
double composite_coherence(std::span<const SubgraphSummary> summaries,
                          const Eigen::MatrixXd& bridge_resistances);

/// Tree backbone: resistance distances coincide with graph distances.
/// tree_edges must form a spanning tree on the subgraph indices.
double tree_backbone_coherence(std::span<const SubgraphSummary> summaries,
                               std::span<const Edge> tree_edges);

/// Line backbone. ordering[p] is the subgraph placed at line position p;
/// bridge distance is the position difference.
double line_backbone_coherence(std::span<const SubgraphSummary> summaries,
                               std::span<const int> ordering);

/// Ring backbone (needs at least 3 subgraphs; a 2-ring would be a
/// multigraph). Bridge resistance between positions k apart is k(n-k)/n.
double ring_backbone_coherence(std::span<const SubgraphSummary> summaries,
                               std::span<const int> ordering);

/// Complete backbone: every bridge pair at resistance 2/n.
double complete_backbone_coherence(std::span<const SubgraphSummary> summaries);

// Backbone topology descriptors, for callers that want a single dispatch
// point instead of the per-shape functions.
struct TreeBackbone {
  std::vector<Edge> edges;
};
struct StarBackbone {
  int center = 0;
};
struct LineBackbone {
  std::vector<int> ordering;
};
struct RingBackbone {
  std::vector<int> ordering;
};
struct CompleteBackbone {};
struct GeneralBackbone {
  std::vector<Edge> edges;  // arbitrary connected graph on subgraph indices
};

using BackboneKind = std::variant<TreeBackbone, StarBackbone, LineBackbone, RingBackbone,
                                  CompleteBackbone, GeneralBackbone>;

double backbone_coherence(std::span<const SubgraphSummary> summaries, const BackboneKind& kind);

/// Index of a largest subgraph: the optimal center of a star backbone.
/// Ties break to the lowest index.
int optimal_star_center(std::span<const int> sizes);

/// Center-out arrangement minimizing the line-backbone coherence: the
/// largest subgraph in the middle, successively smaller ones alternating
/// right and left, the smallest at the endpoints. Returns ordering[p] =
/// subgraph at position p; all-equal sizes return the identity ordering.
std::vector<int> optimal_line_ordering(std::span<const int> sizes);

/// Lower bound for the coherence of a composite of n subgraphs of uniform
/// size m. The published expression carries a factor-2 slip in its middle
/// term (its own derivation yields m^2(n-1), and the published form already
/// fails at n = m = 2), so both are exposed; `corrected` is the one the rest
/// of the library uses.
struct LowerBound {
  double published = 0.0;  // (1/2N)[n(m-1) + 2 m^2 (n-1) + 2n(n-1)(m-1)]
  double corrected = 0.0;     // (1/2N)[n(m-1) +   m^2 (n-1) + 2n(n-1)(m-1)]
};

LowerBound lower_bound(int n, int m);

/// Upper bound, attained by the composite of path subgraphs bridged at
/// endpoints along a line backbone.
double upper_bound(int n, int m);

}  // namespace cohnet
