#include <doctest.h>

#include <sstream>

#include "cohnet/errors.hpp"
#include "cohnet/experiments.hpp"
#include "cohnet/io.hpp"

using namespace cohnet;

TEST_CASE("graph round trip") {
  const Graph g(5, {{0, 1}, {1, 2}, {3, 4}});
  std::stringstream buffer;
  write_graph(buffer, g);
  CHECK(read_graph(buffer) == g);
}

TEST_CASE("graph parsing tolerates comments and blank lines") {
  std::istringstream in(
      "# a disconnected pair\n"
      "\n"
      "nodes 3\n"
      "  0 1\n"
      "\n");
  const Graph g = read_graph(in, "inline");
  CHECK(g.node_count() == 3);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}});
}

TEST_CASE("graph parse errors carry file and line context") {
  std::istringstream missing_header("0 1\n");
  CHECK_THROWS_WITH_AS(read_graph(missing_header, "g.txt"),
                       doctest::Contains("g.txt:1"), ParseError);

  std::istringstream self_loop("nodes 3\n0 1\n2 2\n");
  CHECK_THROWS_WITH_AS(read_graph(self_loop, "g.txt"), doctest::Contains("g.txt:3"), ParseError);

  std::istringstream out_of_range("nodes 2\n0 5\n");
  CHECK_THROWS_AS(read_graph(out_of_range, "g.txt"), ParseError);

  std::istringstream trailing("nodes 2\n0 1 7\n");
  CHECK_THROWS_WITH_AS(read_graph(trailing, "g.txt"), doctest::Contains("trailing"), ParseError);
}

TEST_CASE("profile round trip with sparse entries") {
  std::istringstream in("nodes 4\nd 1 0.5\nd 3 1\n");
  const StubbornnessProfile d = read_profile(in, "p.txt");
  CHECK(d.values == std::vector<double>{0.0, 0.5, 0.0, 1.0});

  std::stringstream buffer;
  write_profile(buffer, d);
  CHECK(read_profile(buffer).values == d.values);

  std::istringstream negative("nodes 2\nd 0 -1\n");
  CHECK_THROWS_AS(read_profile(negative, "p.txt"), ParseError);
  std::istringstream bad_index("nodes 2\nd 9 1\n");
  CHECK_THROWS_WITH_AS(read_profile(bad_index, "p.txt"), doctest::Contains("p.txt:2"),
                       ParseError);
}

TEST_CASE("composite spec round trip") {
  const CompositeSpec spec = worked_example_spec();
  std::stringstream buffer;
  write_composite_spec(buffer, spec);
  const CompositeSpec parsed = read_composite_spec(buffer);
  CHECK(parsed.subgraphs == spec.subgraphs);
  CHECK(parsed.bridge_nodes == spec.bridge_nodes);
  REQUIRE(parsed.connecting_edges.size() == 1);
  CHECK(parsed.connecting_edges[0] == spec.connecting_edges[0]);
  CHECK(assemble(parsed).graph == assemble(spec).graph);
}

TEST_CASE("composite spec parse errors") {
  std::istringstream undeclared("subgraphs 2\nsubgraph 0 nodes 2\nsubgraph-edge 0 0 1\n");
  CHECK_THROWS_WITH_AS(read_composite_spec(undeclared, "c.txt"),
                       doctest::Contains("subgraph 1"), ParseError);

  std::istringstream missing_bridge(
      "subgraphs 2\nsubgraph 0 nodes 1\nsubgraph 1 nodes 1\nbridge 0 0\n");
  CHECK_THROWS_AS(read_composite_spec(missing_bridge, "c.txt"), ParseError);

  std::istringstream off_bridge(
      "subgraphs 2\nsubgraph 0 nodes 2\nsubgraph-edge 0 0 1\nsubgraph 1 nodes 2\n"
      "subgraph-edge 1 0 1\nbridge 0 0\nbridge 1 0\nconnect 0 1 1 0\n");
  CHECK_THROWS_WITH_AS(read_composite_spec(off_bridge, "c.txt"),
                       doctest::Contains("bridge"), ParseError);

  std::istringstream unknown("subgraphs 1\nsubgraph 0 nodes 1\nfrobnicate 1\n");
  CHECK_THROWS_WITH_AS(read_composite_spec(unknown, "c.txt"),
                       doctest::Contains("frobnicate"), ParseError);
}
