#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "cohnet/coherence.hpp"
#include "cohnet/experiments.hpp"
#include "cohnet/formulas.hpp"
#include "cohnet/graph.hpp"
#include "support.hpp"

using namespace cohnet;
using testsupport::complete_graph;
using testsupport::path_graph;
using testsupport::random_connected_graph;

namespace {

// Numeric oracle: assemble the composite and take the coherence of its
// Laplacian pseudo-inverse.
double numeric_coherence(const CompositeSpec& spec) {
  return coherence_consensus(assemble(spec).graph);
}

std::vector<SubgraphSummary> summaries_of(const CompositeSpec& spec) {
  std::vector<SubgraphSummary> out;
  for (int i = 0; i < spec.subgraph_count(); ++i) {
    out.push_back(summarize(spec.subgraphs[static_cast<std::size_t>(i)],
                            (*spec.bridge_nodes)[static_cast<std::size_t>(i)]));
  }
  return out;
}

CompositeSpec composite_with_backbone(const std::vector<Graph>& subgraphs,
                                      const std::vector<int>& bridges,
                                      const std::vector<Edge>& backbone_edges) {
  CompositeSpec spec;
  spec.subgraphs = subgraphs;
  spec.bridge_nodes = bridges;
  for (const auto& [i, j] : backbone_edges) {
    spec.connecting_edges.push_back({SubgraphNode{i, bridges[static_cast<std::size_t>(i)]},
                                     SubgraphNode{j, bridges[static_cast<std::size_t>(j)]}});
  }
  return spec;
}

}  // namespace

TEST_CASE("composite_coherence reproduces the worked example") {
  const CompositeSpec spec = worked_example_spec();
  const auto summaries = summaries_of(spec);
  CHECK(summaries[0].size == 3);
  CHECK(summaries[0].coherence == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
  CHECK(summaries[0].bridge_centrality == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(summaries[1].bridge_centrality == doctest::Approx(7.0 / 3.0).epsilon(1e-12));

  Eigen::MatrixXd r(2, 2);
  r << 0, 1, 1, 0;
  CHECK(composite_coherence(summaries, r) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("composite_coherence edge cases") {
  // Single subgraph: the formula collapses to its own coherence.
  Rng rng(7);
  const Graph g = random_connected_graph(6, 0.4, rng);
  const SubgraphSummary s[1] = {summarize(g, 0)};
  CHECK(composite_coherence(s, Eigen::MatrixXd::Zero(1, 1)) ==
        doctest::Approx(coherence_consensus(g)).epsilon(1e-12));

  // Two bridged K2s form a 4-path.
  const Graph k2(2, {{0, 1}});
  const SubgraphSummary two[2] = {summarize(k2, 0), summarize(k2, 0)};
  Eigen::MatrixXd r(2, 2);
  r << 0, 1, 1, 0;
  CHECK(composite_coherence(two, r) ==
        doctest::Approx(coherence_consensus(path_graph(4))).epsilon(1e-12));

  CHECK_THROWS_AS(composite_coherence(two, Eigen::MatrixXd::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("composite_coherence matches the numeric oracle on random composites") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const auto composite = testsupport::random_bridge_composite(5, 10, rng);
    const auto summaries = summaries_of(composite.spec);
    const double formula =
        composite_coherence(summaries, resistance_matrix(composite.backbone).values);
    CHECK(formula == doctest::Approx(numeric_coherence(composite.spec)).epsilon(1e-10));
  }
}

TEST_CASE("optimal bridge choice: min-centrality nodes never hurt") {
  Rng rng(131);
  for (int trial = 0; trial < 15; ++trial) {
    auto composite = testsupport::random_bridge_composite(4, 8, rng);
    const Eigen::MatrixXd backbone_r = resistance_matrix(composite.backbone).values;
    const double with_random_bridges =
        composite_coherence(summaries_of(composite.spec), backbone_r);

    std::vector<int> best_bridges;
    for (const Graph& sub : composite.spec.subgraphs) {
      best_bridges.push_back(min_centrality_node(sub));
    }
    std::vector<SubgraphSummary> best_summaries;
    for (int i = 0; i < composite.spec.subgraph_count(); ++i) {
      best_summaries.push_back(summarize(composite.spec.subgraphs[static_cast<std::size_t>(i)],
                                         best_bridges[static_cast<std::size_t>(i)]));
    }
    CHECK(composite_coherence(best_summaries, backbone_r) <= with_random_bridges + 1e-12);
  }
}

TEST_CASE("tree backbone formula") {
  const CompositeSpec spec = worked_example_spec();
  const auto summaries = summaries_of(spec);
  const Edge trivial_tree[1] = {{0, 1}};
  CHECK(tree_backbone_coherence(summaries, trivial_tree) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-12));

  // Against the resistance matrix of the tree, and against the assembled graph.
  Rng rng(151);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<Graph> subgraphs;
    std::vector<int> bridges;
    for (int i = 0; i < n; ++i) {
      const int m = 1 + static_cast<int>(rng() % 7);
      subgraphs.push_back(random_connected_graph(m, 0.3, rng));
      bridges.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(m)));
    }
    const Graph tree = random_connected_graph(n, 0.0, rng);
    const CompositeSpec composite = composite_with_backbone(subgraphs, bridges, tree.edges());
    const auto s = summaries_of(composite);
    const double value = tree_backbone_coherence(s, tree.edges());
    CHECK(value ==
          doctest::Approx(composite_coherence(s, resistance_matrix(tree).values)).epsilon(1e-10));
    CHECK(value == doctest::Approx(numeric_coherence(composite)).epsilon(1e-10));
  }

  // A cyclic edge set is rejected.
  const Graph k2(2, {{0, 1}});
  const SubgraphSummary three[3] = {summarize(k2, 0), summarize(k2, 0), summarize(k2, 0)};
  const std::vector<Edge> cycle{{0, 1}, {1, 2}, {0, 2}};
  CHECK_THROWS_AS(tree_backbone_coherence(three, cycle), std::invalid_argument);
}

TEST_CASE("line backbone formula") {
  const CompositeSpec spec = worked_example_spec();
  const auto summaries = summaries_of(spec);
  const int pair_order[2] = {0, 1};
  CHECK(line_backbone_coherence(summaries, pair_order) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-12));

  Rng rng(171);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<Graph> subgraphs;
    std::vector<int> bridges;
    for (int i = 0; i < n; ++i) {
      const int m = 1 + static_cast<int>(rng() % 6);
      subgraphs.push_back(random_connected_graph(m, 0.4, rng));
      bridges.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(m)));
    }
    std::vector<int> ordering(static_cast<std::size_t>(n));
    std::iota(ordering.begin(), ordering.end(), 0);
    std::shuffle(ordering.begin(), ordering.end(), rng);
    // Backbone edges join consecutive positions.
    std::vector<Edge> backbone;
    for (int p = 0; p + 1 < n; ++p) {
      backbone.push_back(make_edge(ordering[static_cast<std::size_t>(p)],
                                   ordering[static_cast<std::size_t>(p + 1)]));
    }
    const CompositeSpec composite = composite_with_backbone(subgraphs, bridges, backbone);
    CHECK(line_backbone_coherence(summaries_of(composite), ordering) ==
          doctest::Approx(numeric_coherence(composite)).epsilon(1e-10));
  }
}

TEST_CASE("ring backbone formula") {
  const Graph k2(2, {{0, 1}});
  const SubgraphSummary two[2] = {summarize(k2, 0), summarize(k2, 0)};
  const std::vector<int> pair{0, 1};
  CHECK_THROWS_AS(ring_backbone_coherence(two, pair), std::invalid_argument);

  Rng rng(191);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    std::vector<Graph> subgraphs;
    std::vector<int> bridges;
    for (int i = 0; i < n; ++i) {
      const int m = 1 + static_cast<int>(rng() % 6);
      subgraphs.push_back(random_connected_graph(m, 0.4, rng));
      bridges.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(m)));
    }
    std::vector<int> ordering(static_cast<std::size_t>(n));
    std::iota(ordering.begin(), ordering.end(), 0);
    std::shuffle(ordering.begin(), ordering.end(), rng);
    std::vector<Edge> backbone;
    for (int p = 0; p < n; ++p) {
      backbone.push_back(make_edge(ordering[static_cast<std::size_t>(p)],
                                   ordering[static_cast<std::size_t>((p + 1) % n)]));
    }
    const CompositeSpec composite = composite_with_backbone(subgraphs, bridges, backbone);
    CHECK(ring_backbone_coherence(summaries_of(composite), ordering) ==
          doctest::Approx(numeric_coherence(composite)).epsilon(1e-10));
  }
}

TEST_CASE("complete backbone formula") {
  const Graph k2(2, {{0, 1}});
  const SubgraphSummary two[2] = {summarize(k2, 0), summarize(k2, 0)};
  Eigen::MatrixXd r(2, 2);
  r << 0, 1, 1, 0;
  CHECK(complete_backbone_coherence(two) ==
        doctest::Approx(composite_coherence(two, r)).epsilon(1e-12));

  Rng rng(211);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    std::vector<Graph> subgraphs;
    std::vector<int> bridges;
    for (int i = 0; i < n; ++i) {
      const int m = 1 + static_cast<int>(rng() % 6);
      subgraphs.push_back(random_connected_graph(m, 0.5, rng));
      bridges.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(m)));
    }
    std::vector<Edge> backbone;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) backbone.emplace_back(i, j);
    }
    const CompositeSpec composite = composite_with_backbone(subgraphs, bridges, backbone);
    CHECK(complete_backbone_coherence(summaries_of(composite)) ==
          doctest::Approx(numeric_coherence(composite)).epsilon(1e-10));
  }
}

TEST_CASE("backbone_coherence dispatch") {
  Rng rng(231);
  const int n = 4;
  std::vector<Graph> subgraphs;
  std::vector<int> bridges;
  std::vector<SubgraphSummary> summaries;
  for (int i = 0; i < n; ++i) {
    subgraphs.push_back(random_connected_graph(3 + static_cast<int>(rng() % 4), 0.4, rng));
    bridges.push_back(0);
    summaries.push_back(summarize(subgraphs.back(), 0));
  }
  const std::vector<Edge> star_edges{{0, 2}, {1, 2}, {2, 3}};
  CHECK(backbone_coherence(summaries, BackboneKind{StarBackbone{2}}) ==
        doctest::Approx(backbone_coherence(summaries, BackboneKind{TreeBackbone{star_edges}}))
            .epsilon(1e-12));
  CHECK(backbone_coherence(summaries, BackboneKind{GeneralBackbone{star_edges}}) ==
        doctest::Approx(tree_backbone_coherence(summaries, star_edges)).epsilon(1e-10));
  const std::vector<int> ordering{3, 1, 0, 2};
  CHECK(backbone_coherence(summaries, BackboneKind{LineBackbone{ordering}}) ==
        doctest::Approx(line_backbone_coherence(summaries, ordering)).epsilon(1e-12));
}

TEST_CASE("optimal_star_center") {
  const int sizes_a[2] = {3, 4};
  CHECK(optimal_star_center(sizes_a) == 1);
  const int sizes_b[3] = {5, 5, 5};
  CHECK(optimal_star_center(sizes_b) == 0);

  // Exhaustive: the returned center minimizes the tree formula over all
  // star centers.
  Rng rng(251);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<int> sizes;
    std::vector<SubgraphSummary> summaries;
    for (int i = 0; i < n; ++i) {
      sizes.push_back(1 + static_cast<int>(rng() % 8));
      summaries.push_back(SubgraphSummary{sizes.back(), 3.0 * unit(rng), 5.0 * unit(rng)});
    }
    const int center = optimal_star_center(sizes);
    const double chosen = backbone_coherence(summaries, BackboneKind{StarBackbone{center}});
    for (int c = 0; c < n; ++c) {
      CHECK(chosen <=
            backbone_coherence(summaries, BackboneKind{StarBackbone{c}}) + 1e-10);
    }
  }
}

TEST_CASE("optimal_line_ordering") {
  const int descending[3] = {5, 4, 3};
  const auto order = optimal_line_ordering(descending);
  CHECK(order[1] == 0);  // largest subgraph at the middle position

  const int equal[4] = {2, 2, 2, 2};
  CHECK(optimal_line_ordering(equal) == std::vector<int>{0, 1, 2, 3});

  // Exhaustive check of the backbone distance term over all permutations.
  Rng rng(271);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<int> sizes;
    for (int i = 0; i < n; ++i) sizes.push_back(1 + static_cast<int>(rng() % 10));

    auto distance_term = [&](const std::vector<int>& ordering) {
      std::vector<int> pos(static_cast<std::size_t>(n));
      for (int p = 0; p < n; ++p) pos[static_cast<std::size_t>(ordering[static_cast<std::size_t>(p)])] = p;
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          total += std::abs(pos[static_cast<std::size_t>(i)] - pos[static_cast<std::size_t>(j)]) *
                   static_cast<double>(sizes[static_cast<std::size_t>(i)]) *
                   sizes[static_cast<std::size_t>(j)];
        }
      }
      return total;
    };

    const double chosen = distance_term(optimal_line_ordering(sizes));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      best = std::min(best, distance_term(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(chosen == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("coherence bounds") {
  const LowerBound lb22 = lower_bound(2, 2);
  CHECK(lb22.corrected == doctest::Approx(1.25));
  CHECK(lb22.published == doctest::Approx(1.75));
  CHECK(upper_bound(2, 2) == doctest::Approx(1.25));
  CHECK(lower_bound(2, 1).corrected == doctest::Approx(0.25));

  // m = 1 collapses the upper bound to the coherence of a path of bridges.
  for (int n : {2, 3, 5, 7}) {
    CHECK(upper_bound(n, 1) ==
          doctest::Approx(coherence_consensus(path_graph(n))).epsilon(1e-10));
  }
  CHECK(upper_bound(2, 3) == doctest::Approx(coherence_consensus(path_graph(6))).epsilon(1e-10));
  CHECK(upper_bound(2, 3) == doctest::Approx(35.0 / 12.0).epsilon(1e-12));

  // The corrected lower bound is the all-complete composite, exactly.
  for (int n = 2; n <= 6; ++n) {
    for (int m = 1; m <= 6; ++m) {
      const BoundsReport report = run_bounds(n, m);
      CHECK(report.complete_composite.has_value());
      CHECK(*report.complete_composite ==
            doctest::Approx(report.corrected_lower).epsilon(1e-10));
      CHECK(*report.line_composite == doctest::Approx(report.upper).epsilon(1e-10));
    }
  }

  CHECK_THROWS_AS(lower_bound(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(upper_bound(2, 0), std::invalid_argument);
}

TEST_CASE("star backbone is the best tree for n <= 5") {
  Rng rng(291);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<int> sizes;
    std::vector<SubgraphSummary> summaries;
    for (int i = 0; i < n; ++i) {
      sizes.push_back(1 + static_cast<int>(rng() % 8));
      summaries.push_back(SubgraphSummary{sizes.back(), 2.0 * unit(rng), 4.0 * unit(rng)});
    }
    const double star_value = backbone_coherence(
        summaries, BackboneKind{StarBackbone{optimal_star_center(sizes)}});
    for (const auto& tree : testsupport::all_trees(n)) {
      CHECK(star_value <= tree_backbone_coherence(summaries, tree) + 1e-10);
    }
  }
}
