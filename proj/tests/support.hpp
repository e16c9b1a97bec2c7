#pragma once

// Shared fixtures and independent oracles for the test suites. Everything
// here is deliberately brute-force so it cannot share a failure mode with
// the library code it checks.

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <vector>

#include "cohnet/graph.hpp"

namespace testsupport {

using cohnet::Edge;
using cohnet::Graph;
using cohnet::Rng;

// Connected graph: a random spanning tree plus extra random edges.
inline Graph random_connected_graph(int n, double extra_edge_prob, Rng& rng) {
  std::vector<Edge> edges;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    edges.push_back(cohnet::make_edge(parent(rng), v));
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (unit(rng) < extra_edge_prob) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

// BFS graph distances, as an oracle for resistance comparisons.
inline std::vector<std::vector<int>> graph_distances(const Graph& g) {
  const int n = g.node_count();
  const auto adj = g.adjacency();
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int s = 0; s < n; ++s) {
    auto& d = dist[static_cast<std::size_t>(s)];
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
  }
  return dist;
}

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.push_back(cohnet::make_edge(0, n - 1));
  return Graph(n, std::move(edges));
}

inline Graph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, std::move(edges));
}

// Decodes a Pruefer sequence into tree edges; with exhaustive sequences this
// enumerates every labeled tree on n nodes.
inline std::vector<Edge> prufer_decode(const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size()) + 2;
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : seq) degree[static_cast<std::size_t>(x)] += 1;
  std::vector<Edge> edges;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int x : seq) {
    for (int leaf = 0; leaf < n; ++leaf) {
      if (degree[static_cast<std::size_t>(leaf)] == 1 && !used[static_cast<std::size_t>(leaf)]) {
        edges.push_back(cohnet::make_edge(leaf, x));
        used[static_cast<std::size_t>(leaf)] = true;
        degree[static_cast<std::size_t>(x)] -= 1;
        break;
      }
    }
  }
  int a = -1;
  for (int v = 0; v < n; ++v) {
    if (!used[static_cast<std::size_t>(v)] && degree[static_cast<std::size_t>(v)] == 1) {
      if (a < 0) {
        a = v;
      } else {
        edges.push_back(cohnet::make_edge(a, v));
      }
    }
  }
  return edges;
}

inline std::vector<std::vector<Edge>> all_trees(int n) {
  std::vector<std::vector<Edge>> trees;
  if (n == 1) {
    trees.push_back({});
    return trees;
  }
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
  while (true) {
    trees.push_back(prufer_decode(seq));
    int i = static_cast<int>(seq.size()) - 1;
    while (i >= 0 && seq[static_cast<std::size_t>(i)] == n - 1) {
      seq[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    seq[static_cast<std::size_t>(i)] += 1;
  }
  return trees;
}

// Random composite in the single-bridge regime: n connected subgraphs, one
// bridge node each, connected backbone.
struct RandomComposite {
  cohnet::CompositeSpec spec;
  Graph backbone;  // on subgraph indices
};

inline RandomComposite random_bridge_composite(int max_subgraphs, int max_size, Rng& rng) {
  std::uniform_int_distribution<int> n_dist(2, max_subgraphs);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = n_dist(rng);
  RandomComposite out;
  std::uniform_int_distribution<int> size_dist(1, max_size);
  std::vector<int> bridges;
  for (int i = 0; i < n; ++i) {
    const int m = size_dist(rng);
    out.spec.subgraphs.push_back(random_connected_graph(m, 0.3 * unit(rng), rng));
    std::uniform_int_distribution<int> node_dist(0, m - 1);
    bridges.push_back(node_dist(rng));
  }
  out.spec.bridge_nodes = bridges;
  out.backbone = random_connected_graph(n, 0.5 * unit(rng), rng);
  for (const auto& [i, j] : out.backbone.edges()) {
    out.spec.connecting_edges.push_back(
        {cohnet::SubgraphNode{i, bridges[static_cast<std::size_t>(i)]},
         cohnet::SubgraphNode{j, bridges[static_cast<std::size_t>(j)]}});
  }
  return out;
}

}  // namespace testsupport
