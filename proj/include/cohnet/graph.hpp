#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cohnet {

using Rng = std::mt19937_64;

/// Undirected edge stored with u < v.
using Edge = std::pair<int, int>;

/// Normalizes (u,v) so that u < v. Throws std::invalid_argument on self-loops
/// or negative indices.
Edge make_edge(int u, int v);

/// Immutable undirected simple graph on nodes 0..node_count-1.
/// Edges are kept sorted and deduplicated; all operations in this library
/// treat Graph as a value and never mutate it in place. Nodes may carry
/// optional stable label strings (pure metadata; the file format and all
/// numerics use indices).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int node_count);
  Graph(int node_count, std::vector<Edge> edges);
  Graph(int node_count, std::vector<Edge> edges, std::vector<std::string> node_labels);

  [[nodiscard]] int node_count() const { return node_count_; }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] bool has_edge(int u, int v) const;

  /// Empty when the graph is unlabeled; otherwise one label per node.
  [[nodiscard]] const std::vector<std::string>& node_labels() const { return node_labels_; }

  /// Adjacency lists, built on demand.
  [[nodiscard]] std::vector<std::vector<int>> adjacency() const;

  bool operator==(const Graph&) const = default;

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;  // sorted, unique, u < v
  std::vector<std::string> node_labels_;
};

/// Copy of g with extra edges added (duplicates ignored).
Graph add_edges(const Graph& g, std::span<const Edge> extra);

bool is_connected(const Graph& g);

/// Component label per node; labels are 0-based in order of first appearance.
std::vector<int> component_labels(const Graph& g);

/// Combinatorial Laplacian L = D - A.
Eigen::MatrixXd laplacian(const Graph& g);

/// Laplacian of the single edge e on node_count nodes: the rank-1 matrix
/// b b^T with b = indicator(u) - indicator(v).
Eigen::MatrixXd edge_laplacian(int node_count, Edge e);

// ---------------------------------------------------------------------------
// Composite graphs
// ---------------------------------------------------------------------------

/// Endpoint of a connecting edge, addressed as (subgraph index, local node).
struct SubgraphNode {
  int subgraph = 0;
  int node = 0;
  bool operator==(const SubgraphNode&) const = default;
};

using ConnectingEdge = std::pair<SubgraphNode, SubgraphNode>;

/// Recipe for building a composite graph from disjoint subgraphs.
///
/// Two regimes are supported: when bridge_nodes is set, every connecting
/// edge must be incident to the designated bridge node of its subgraph
/// (single-bridge regime); when unset, connecting edges may join arbitrary
/// nodes of distinct subgraphs.
struct CompositeSpec {
  std::vector<Graph> subgraphs;
  std::optional<std::vector<int>> bridge_nodes;  // local index per subgraph
  std::vector<ConnectingEdge> connecting_edges;

  [[nodiscard]] int subgraph_count() const { return static_cast<int>(subgraphs.size()); }
  [[nodiscard]] int total_nodes() const;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

/// A composite graph together with its global indexing. Subgraphs are
/// concatenated in list order: local node k of subgraph i maps to
/// offsets[i] + k. Node labels carry over when every subgraph is labeled.
struct AssembledComposite {
  Graph graph;
  std::vector<int> offsets;    // per subgraph
  std::vector<int> partition;  // global node -> subgraph index

  [[nodiscard]] int global_index(int subgraph, int local_node) const {
    return offsets[static_cast<std::size_t>(subgraph)] + local_node;
  }
};

AssembledComposite assemble(const CompositeSpec& spec);

// ---------------------------------------------------------------------------
// Stubbornness profiles
// ---------------------------------------------------------------------------

/// Per-node absolute-feedback gains d_j >= 0.
struct StubbornnessProfile {
  std::vector<double> values;

  [[nodiscard]] int size() const { return static_cast<int>(values.size()); }

  /// All entries nonnegative and finite.
  void validate() const;

  /// True when every group in the partition contains a strictly positive entry.
  [[nodiscard]] bool valid_for_partition(std::span<const int> partition) const;
};

/// d_j = 1 for all nodes.
StubbornnessProfile identity_profile(int n);

// ---------------------------------------------------------------------------
// Random instance generation. All generators are pure functions of their
// seed; Rng& overloads draw from an existing stream instead.
// ---------------------------------------------------------------------------

/// G(n, p): each of the n(n-1)/2 candidate edges included independently
/// with probability p.
Graph erdos_renyi(int n, double p, std::uint64_t seed);
Graph erdos_renyi(int n, double p, Rng& rng);

struct SizeRange {
  int lo = 1;
  int hi = 1;
};

/// Connected G(n, p) with n drawn uniformly from [range.lo, range.hi];
/// resamples until connected. Throws GenerationError once max_attempts
/// rejections accumulate.
Graph random_connected_er(SizeRange range, double p, std::uint64_t seed, int max_attempts = 1000);
Graph random_connected_er(SizeRange range, double p, Rng& rng, int max_attempts = 1000);

/// Mixture profile: each entry is 0 with probability 0.2 and otherwise
/// uniform on (0, 1]. Does not enforce per-subgraph validity; callers that
/// need it resample.
StubbornnessProfile random_stubbornness(int n, std::uint64_t seed);
StubbornnessProfile random_stubbornness(int n, Rng& rng);

}  // namespace cohnet
