#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cohnet/graph.hpp"

namespace cohnet {

// Text formats. Blank lines and lines starting with '#' are ignored;
// parse errors carry "<name>:<line>:" context.
//
// Graph: a "nodes N" header, then one 0-based "u v" pair per line.
//
//   nodes 4
//   0 1
//   1 2
//
// Stubbornness profile: a "nodes N" header, then "d <index> <value>" lines;
// unlisted nodes default to 0.
//
//   nodes 4
//   d 0 1.0
//   d 2 0.25
//
// Composite spec: "subgraphs K", then per-subgraph "subgraph <i> nodes <m>"
// and "subgraph-edge <i> <u> <v>" lines, optional "bridge <i> <node>" lines
// (all or none), and "connect <i> <u> <j> <v>" lines for connecting edges.

Graph read_graph(std::istream& in, const std::string& name = "<stream>");
Graph read_graph_file(const std::filesystem::path& path);
void write_graph(std::ostream& out, const Graph& g);

StubbornnessProfile read_profile(std::istream& in, const std::string& name = "<stream>");
StubbornnessProfile read_profile_file(const std::filesystem::path& path);
void write_profile(std::ostream& out, const StubbornnessProfile& d);

CompositeSpec read_composite_spec(std::istream& in, const std::string& name = "<stream>");
CompositeSpec read_composite_spec_file(const std::filesystem::path& path);
void write_composite_spec(std::ostream& out, const CompositeSpec& spec);

}  // namespace cohnet
