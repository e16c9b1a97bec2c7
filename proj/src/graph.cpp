#include "cohnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "cohnet/errors.hpp"

namespace cohnet {

Edge make_edge(int u, int v) {
  if (u < 0 || v < 0) {
    throw std::invalid_argument("edge endpoint is negative: (" + std::to_string(u) + "," +
                                std::to_string(v) + ")");
  }
  if (u == v) {
    throw std::invalid_argument("self-loop (" + std::to_string(u) + "," + std::to_string(v) +
                                ") is not a valid edge");
  }
  return u < v ? Edge{u, v} : Edge{v, u};
}

Graph::Graph(int node_count) : node_count_(node_count) {
  if (node_count < 0) throw std::invalid_argument("node_count must be nonnegative");
}

Graph::Graph(int node_count, std::vector<Edge> edges) : Graph(node_count) {
  edges_.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    Edge e = make_edge(u, v);
    if (e.second >= node_count_) {
      throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") references node outside 0.." +
                                  std::to_string(node_count_ - 1));
    }
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

Graph::Graph(int node_count, std::vector<Edge> edges, std::vector<std::string> node_labels)
    : Graph(node_count, std::move(edges)) {
  if (static_cast<int>(node_labels.size()) != node_count) {
    throw std::invalid_argument("expected one label per node");
  }
  node_labels_ = std::move(node_labels);
}

bool Graph::has_edge(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= node_count_ || v >= node_count_) return false;
  return std::binary_search(edges_.begin(), edges_.end(), make_edge(u, v));
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count_));
  for (const auto& [u, v] : edges_) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

Graph add_edges(const Graph& g, std::span<const Edge> extra) {
  std::vector<Edge> edges = g.edges();
  edges.insert(edges.end(), extra.begin(), extra.end());
  if (g.node_labels().empty()) return Graph(g.node_count(), std::move(edges));
  return Graph(g.node_count(), std::move(edges), g.node_labels());
}

std::vector<int> component_labels(const Graph& g) {
  const int n = g.node_count();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  const auto adj = g.adjacency();
  int next = 0;
  std::deque<int> queue;
  for (int s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = next;
    queue.push_back(s);
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : adj[static_cast<std::size_t>(x)]) {
        if (label[static_cast<std::size_t>(y)] < 0) {
          label[static_cast<std::size_t>(y)] = next;
          queue.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  if (g.node_count() <= 1) return true;
  const auto labels = component_labels(g);
  return std::all_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
}

Eigen::MatrixXd laplacian(const Graph& g) {
  const int n = g.node_count();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    lap(u, u) += 1.0;
    lap(v, v) += 1.0;
    lap(u, v) -= 1.0;
    lap(v, u) -= 1.0;
  }
  return lap;
}

Eigen::MatrixXd edge_laplacian(int node_count, Edge e) {
  const auto [u, v] = make_edge(e.first, e.second);
  if (v >= node_count) {
    throw std::invalid_argument("edge endpoint " + std::to_string(v) + " outside 0.." +
                                std::to_string(node_count - 1));
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(node_count, node_count);
  lap(u, u) = 1.0;
  lap(v, v) = 1.0;
  lap(u, v) = -1.0;
  lap(v, u) = -1.0;
  return lap;
}

int CompositeSpec::total_nodes() const {
  int total = 0;
  for (const auto& g : subgraphs) total += g.node_count();
  return total;
}

void CompositeSpec::validate() const {
  const int n = subgraph_count();
  if (n == 0) throw std::invalid_argument("composite spec has no subgraphs");
  if (bridge_nodes) {
    if (static_cast<int>(bridge_nodes->size()) != n) {
      throw std::invalid_argument("bridge_nodes size does not match subgraph count");
    }
    for (int i = 0; i < n; ++i) {
      const int b = (*bridge_nodes)[static_cast<std::size_t>(i)];
      if (b < 0 || b >= subgraphs[static_cast<std::size_t>(i)].node_count()) {
        throw std::invalid_argument("bridge node " + std::to_string(b) +
                                    " out of range for subgraph " + std::to_string(i));
      }
    }
  }
  for (const auto& [a, b] : connecting_edges) {
    for (const auto& end : {a, b}) {
      if (end.subgraph < 0 || end.subgraph >= n) {
        throw std::invalid_argument("connecting edge references subgraph " +
                                    std::to_string(end.subgraph));
      }
      const auto& g = subgraphs[static_cast<std::size_t>(end.subgraph)];
      if (end.node < 0 || end.node >= g.node_count()) {
        throw std::invalid_argument("connecting edge references node " + std::to_string(end.node) +
                                    " outside subgraph " + std::to_string(end.subgraph));
      }
      if (bridge_nodes && end.node != (*bridge_nodes)[static_cast<std::size_t>(end.subgraph)]) {
        throw std::invalid_argument(
            "connecting edge endpoint is not the bridge node of subgraph " +
            std::to_string(end.subgraph));
      }
    }
    if (a.subgraph == b.subgraph) {
      throw std::invalid_argument("connecting edge joins subgraph " + std::to_string(a.subgraph) +
                                  " to itself");
    }
  }
}

AssembledComposite assemble(const CompositeSpec& spec) {
  spec.validate();
  const int n = spec.subgraph_count();
  AssembledComposite out;
  out.offsets.resize(static_cast<std::size_t>(n));
  int offset = 0;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    out.offsets[static_cast<std::size_t>(i)] = offset;
    const auto& g = spec.subgraphs[static_cast<std::size_t>(i)];
    for (const auto& [u, v] : g.edges()) edges.emplace_back(offset + u, offset + v);
    for (int k = 0; k < g.node_count(); ++k) out.partition.push_back(i);
    offset += g.node_count();
  }
  for (const auto& [a, b] : spec.connecting_edges) {
    edges.push_back(make_edge(out.global_index(a.subgraph, a.node),
                              out.global_index(b.subgraph, b.node)));
  }
  const bool all_labeled =
      std::all_of(spec.subgraphs.begin(), spec.subgraphs.end(),
                  [](const Graph& g) { return !g.node_labels().empty(); });
  if (all_labeled) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(offset));
    for (const Graph& g : spec.subgraphs) {
      labels.insert(labels.end(), g.node_labels().begin(), g.node_labels().end());
    }
    out.graph = Graph(offset, std::move(edges), std::move(labels));
  } else {
    out.graph = Graph(offset, std::move(edges));
  }
  return out;
}

void StubbornnessProfile::validate() const {
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double d = values[j];
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("stubbornness d_" + std::to_string(j) +
                                  " must be finite and >= 0");
    }
  }
}

bool StubbornnessProfile::valid_for_partition(std::span<const int> partition) const {
  if (partition.size() != values.size()) return false;
  int groups = 0;
  for (int p : partition) groups = std::max(groups, p + 1);
  std::vector<bool> has_positive(static_cast<std::size_t>(groups), false);
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] > 0.0) has_positive[static_cast<std::size_t>(partition[j])] = true;
  }
  return std::all_of(has_positive.begin(), has_positive.end(), [](bool b) { return b; });
}

StubbornnessProfile identity_profile(int n) {
  return StubbornnessProfile{std::vector<double>(static_cast<std::size_t>(n), 1.0)};
}

Graph erdos_renyi(int n, double p, Rng& rng) {
  if (n < 1) throw std::invalid_argument("erdos_renyi requires n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must be in [0,1]");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (unit(rng) < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  return erdos_renyi(n, p, rng);
}

Graph random_connected_er(SizeRange range, double p, Rng& rng, int max_attempts) {
  if (range.lo < 1 || range.hi < range.lo) {
    throw std::invalid_argument("size range must satisfy 1 <= lo <= hi");
  }
  std::uniform_int_distribution<int> size_dist(range.lo, range.hi);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const int n = size_dist(rng);
    Graph g = erdos_renyi(n, p, rng);
    if (is_connected(g)) return g;
  }
  throw GenerationError("failed to draw a connected G(n," + std::to_string(p) + ") with n in [" +
                        std::to_string(range.lo) + "," + std::to_string(range.hi) + "] after " +
                        std::to_string(max_attempts) + " attempts");
}

Graph random_connected_er(SizeRange range, double p, std::uint64_t seed, int max_attempts) {
  Rng rng(seed);
  return random_connected_er(range, p, rng, max_attempts);
}

StubbornnessProfile random_stubbornness(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_stubbornness requires n >= 1");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StubbornnessProfile profile;
  profile.values.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    if (unit(rng) < 0.2) {
      profile.values.push_back(0.0);
    } else {
      // 1 - U maps [0,1) onto (0,1].
      profile.values.push_back(1.0 - unit(rng));
    }
  }
  return profile;
}

StubbornnessProfile random_stubbornness(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_stubbornness(n, rng);
}

}  // namespace cohnet
