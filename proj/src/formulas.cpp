#include "cohnet/formulas.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cohnet/coherence.hpp"
#include "cohnet/errors.hpp"

namespace cohnet {

namespace {

void require_summaries(std::span<const SubgraphSummary> summaries, int min_count) {
  if (static_cast<int>(summaries.size()) < min_count) {
    throw std::invalid_argument("need at least " + std::to_string(min_count) + " subgraphs");
  }
  for (const auto& s : summaries) {
    if (s.size < 1) throw std::invalid_argument("subgraph size must be >= 1");
    if (s.coherence < 0.0 || s.bridge_centrality < 0.0) {
      throw std::invalid_argument("subgraph summary entries must be nonnegative");
    }
  }
}

// positions[i] = line/ring position of subgraph i.
std::vector<int> positions_from_ordering(std::span<const int> ordering) {
  const int n = static_cast<int>(ordering.size());
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int p = 0; p < n; ++p) {
    const int g = ordering[static_cast<std::size_t>(p)];
    if (g < 0 || g >= n || pos[static_cast<std::size_t>(g)] != -1) {
      throw std::invalid_argument("ordering is not a permutation of 0..n-1");
    }
    pos[static_cast<std::size_t>(g)] = p;
  }
  return pos;
}

Eigen::MatrixXd tree_distances(int n, std::span<const Edge> tree_edges) {
  if (static_cast<int>(tree_edges.size()) != n - 1) {
    throw std::invalid_argument("backbone is not a spanning tree: expected " +
                                std::to_string(n - 1) + " edges, got " +
                                std::to_string(tree_edges.size()));
  }
  std::vector<Edge> edges(tree_edges.begin(), tree_edges.end());
  const Graph tree(n, std::move(edges));
  if (tree.edge_count() != n - 1 || !is_connected(tree)) {
    throw std::invalid_argument("backbone is not a spanning tree (cyclic or disconnected)");
  }
  const auto adj = tree.adjacency();
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    std::vector<int> d(static_cast<std::size_t>(n), -1);
    d[static_cast<std::size_t>(s)] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : adj[static_cast<std::size_t>(x)]) {
        if (d[static_cast<std::size_t>(y)] < 0) {
          d[static_cast<std::size_t>(y)] = d[static_cast<std::size_t>(x)] + 1;
          queue.push_back(y);
        }
      }
    }
    for (int t = 0; t < n; ++t) dist(s, t) = d[static_cast<std::size_t>(t)];
  }
  return dist;
}

}  // namespace

SubgraphSummary summarize(const Graph& g, int bridge_node) {
  if (g.node_count() == 1) {
    if (bridge_node != 0) throw std::invalid_argument("bridge node out of range");
    return SubgraphSummary{1, 0.0, 0.0};
  }
  const ResistanceMatrix r = resistance_matrix(g);
  double total = 0.0;
  for (Eigen::Index u = 0; u < r.values.rows(); ++u) {
    for (Eigen::Index v = u + 1; v < r.values.cols(); ++v) total += r.values(u, v);
  }
  return SubgraphSummary{g.node_count(), total / (2.0 * g.node_count()),
                         r.centrality(bridge_node)};
}

double composite_coherence(std::span<const SubgraphSummary> summaries,
                          const Eigen::MatrixXd& bridge_resistances) {
  require_summaries(summaries, 1);
  const int n = static_cast<int>(summaries.size());
  if (bridge_resistances.rows() != n || bridge_resistances.cols() != n) {
    throw std::invalid_argument("bridge resistance matrix must be " + std::to_string(n) + "x" +
                                std::to_string(n));
  }
  double total_nodes = 0.0;
  for (const auto& s : summaries) total_nodes += s.size;

  double subgraph_term = 0.0;
  double backbone_term = 0.0;
  double centrality_term = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& si = summaries[static_cast<std::size_t>(i)];
    subgraph_term += 2.0 * si.size * si.coherence;
    centrality_term += (total_nodes - si.size) * si.bridge_centrality;
    for (int j = i + 1; j < n; ++j) {
      const auto& sj = summaries[static_cast<std::size_t>(j)];
      backbone_term += static_cast<double>(si.size) * sj.size * bridge_resistances(i, j);
    }
  }
  return (subgraph_term + backbone_term + centrality_term) / (2.0 * total_nodes);
}

double tree_backbone_coherence(std::span<const SubgraphSummary> summaries,
                               std::span<const Edge> tree_edges) {
  require_summaries(summaries, 1);
  const int n = static_cast<int>(summaries.size());
  return composite_coherence(summaries, tree_distances(n, tree_edges));
}

double line_backbone_coherence(std::span<const SubgraphSummary> summaries,
                               std::span<const int> ordering) {
  require_summaries(summaries, 1);
  const int n = static_cast<int>(summaries.size());
  if (static_cast<int>(ordering.size()) != n) {
    throw std::invalid_argument("ordering size does not match subgraph count");
  }
  const auto pos = positions_from_ordering(ordering);
  Eigen::MatrixXd r(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) r(i, j) = std::abs(pos[i] - pos[j]);
  }
  return composite_coherence(summaries, r);
}

double ring_backbone_coherence(std::span<const SubgraphSummary> summaries,
                               std::span<const int> ordering) {
  require_summaries(summaries, 3);
  const int n = static_cast<int>(summaries.size());
  if (static_cast<int>(ordering.size()) != n) {
    throw std::invalid_argument("ordering size does not match subgraph count");
  }
  const auto pos = positions_from_ordering(ordering);
  Eigen::MatrixXd r(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = std::abs(pos[i] - pos[j]);
      r(i, j) = static_cast<double>(k) * (n - k) / n;
    }
  }
  return composite_coherence(summaries, r);
}

double complete_backbone_coherence(std::span<const SubgraphSummary> summaries) {
  require_summaries(summaries, 2);
  const int n = static_cast<int>(summaries.size());
  Eigen::MatrixXd r = Eigen::MatrixXd::Constant(n, n, 2.0 / n);
  r.diagonal().setZero();
  return composite_coherence(summaries, r);
}

double backbone_coherence(std::span<const SubgraphSummary> summaries, const BackboneKind& kind) {
  const int n = static_cast<int>(summaries.size());
  return std::visit(
      [&](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, TreeBackbone>) {
          return tree_backbone_coherence(summaries, b.edges);
        } else if constexpr (std::is_same_v<T, StarBackbone>) {
          if (b.center < 0 || b.center >= n) {
            throw std::invalid_argument("star center out of range");
          }
          std::vector<Edge> edges;
          for (int i = 0; i < n; ++i) {
            if (i != b.center) edges.push_back(make_edge(b.center, i));
          }
          return tree_backbone_coherence(summaries, edges);
        } else if constexpr (std::is_same_v<T, LineBackbone>) {
          return line_backbone_coherence(summaries, b.ordering);
        } else if constexpr (std::is_same_v<T, RingBackbone>) {
          return ring_backbone_coherence(summaries, b.ordering);
        } else if constexpr (std::is_same_v<T, CompleteBackbone>) {
          return complete_backbone_coherence(summaries);
        } else {
          static_assert(std::is_same_v<T, GeneralBackbone>);
          const Graph backbone(n, b.edges);
          return composite_coherence(summaries, resistance_matrix(backbone).values);
        }
      },
      kind);
}

int optimal_star_center(std::span<const int> sizes) {
  if (sizes.size() < 2) throw std::invalid_argument("need at least 2 subgraphs");
  int best = 0;
  for (int i = 1; i < static_cast<int>(sizes.size()); ++i) {
    if (sizes[static_cast<std::size_t>(i)] > sizes[static_cast<std::size_t>(best)]) best = i;
  }
  return best;
}

std::vector<int> optimal_line_ordering(std::span<const int> sizes) {
  const int n = static_cast<int>(sizes.size());
  if (n < 2) throw std::invalid_argument("need at least 2 subgraphs");
  std::vector<int> order(static_cast<std::size_t>(n));
  if (std::all_of(sizes.begin(), sizes.end(), [&](int s) { return s == sizes[0]; })) {
    std::iota(order.begin(), order.end(), 0);  // every arrangement ties
    return order;
  }
  std::vector<int> by_size(static_cast<std::size_t>(n));
  std::iota(by_size.begin(), by_size.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(), [&](int a, int b) {
    return sizes[static_cast<std::size_t>(a)] > sizes[static_cast<std::size_t>(b)];
  });
  // Positions visited center-out: c, c+1, c-1, c+2, c-2, ...
  const int center = (n - 1) / 2;
  std::vector<int> slots{center};
  for (int d = 1; static_cast<int>(slots.size()) < n; ++d) {
    if (center + d < n) slots.push_back(center + d);
    if (center - d >= 0) slots.push_back(center - d);
  }
  for (int rank = 0; rank < n; ++rank) {
    order[static_cast<std::size_t>(slots[static_cast<std::size_t>(rank)])] =
        by_size[static_cast<std::size_t>(rank)];
  }
  return order;
}

LowerBound lower_bound(int n, int m) {
  if (n < 2 || m < 1) throw std::invalid_argument("lower_bound requires n >= 2, m >= 1");
  const double total = 2.0 * n * m;
  const double shared = n * (m - 1.0) + 2.0 * n * (n - 1.0) * (m - 1.0);
  return LowerBound{(shared + 2.0 * m * m * (n - 1.0)) / total,
                    (shared + m * m * (n - 1.0)) / total};
}

double upper_bound(int n, int m) {
  if (n < 2 || m < 1) throw std::invalid_argument("upper_bound requires n >= 2, m >= 1");
  const double total = static_cast<double>(n) * m;
  return n * m * (m * m - 1.0) / (12.0 * total) + n * m * m * (n * n - 1.0) / (12.0 * total) +
         n * m * m * (m - 1.0) * (n - 1.0) / (4.0 * total);
}

}  // namespace cohnet
