#include "cohnet/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cohnet/errors.hpp"

namespace cohnet {

namespace {

// Iterates meaningful lines, tracking line numbers for error context.
class LineReader {
 public:
  LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  bool next(std::istringstream& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      tokens = std::istringstream(line);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(name_ + ":" + std::to_string(line_number_) + ": " + message);
  }

  template <typename T>
  T expect(std::istringstream& tokens, const char* what) {
    T value{};
    if (!(tokens >> value)) fail(std::string("expected ") + what);
    return value;
  }

  void expect_keyword(std::istringstream& tokens, const std::string& keyword) {
    std::string word;
    if (!(tokens >> word) || word != keyword) fail("expected keyword '" + keyword + "'");
  }

  void expect_end(std::istringstream& tokens) {
    std::string extra;
    if (tokens >> extra) fail("unexpected trailing token '" + extra + "'");
  }

 private:
  std::istream& in_;
  std::string name_;
  int line_number_ = 0;
};

std::string format_value(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

template <typename T>
T read_from_file(const std::filesystem::path& path,
                 T (*reader)(std::istream&, const std::string&)) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  return reader(in, path.string());
}

}  // namespace

Graph read_graph(std::istream& in, const std::string& name) {
  LineReader reader(in, name);
  std::istringstream tokens;
  if (!reader.next(tokens)) reader.fail("missing 'nodes N' header");
  reader.expect_keyword(tokens, "nodes");
  const int n = reader.expect<int>(tokens, "node count");
  reader.expect_end(tokens);
  if (n < 0) reader.fail("node count must be nonnegative");

  std::vector<Edge> edges;
  while (reader.next(tokens)) {
    const int u = reader.expect<int>(tokens, "edge endpoint");
    const int v = reader.expect<int>(tokens, "edge endpoint");
    reader.expect_end(tokens);
    try {
      edges.push_back(make_edge(u, v));
    } catch (const std::invalid_argument& err) {
      reader.fail(err.what());
    }
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const std::invalid_argument& err) {
    throw ParseError(name + ": " + err.what());
  }
}

Graph read_graph_file(const std::filesystem::path& path) {
  return read_from_file(path, read_graph);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "nodes " << g.node_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

StubbornnessProfile read_profile(std::istream& in, const std::string& name) {
  LineReader reader(in, name);
  std::istringstream tokens;
  if (!reader.next(tokens)) reader.fail("missing 'nodes N' header");
  reader.expect_keyword(tokens, "nodes");
  const int n = reader.expect<int>(tokens, "node count");
  reader.expect_end(tokens);
  if (n < 0) reader.fail("node count must be nonnegative");

  StubbornnessProfile profile{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  while (reader.next(tokens)) {
    reader.expect_keyword(tokens, "d");
    const int index = reader.expect<int>(tokens, "node index");
    const double value = reader.expect<double>(tokens, "stubbornness value");
    reader.expect_end(tokens);
    if (index < 0 || index >= n) reader.fail("node index " + std::to_string(index) + " out of range");
    if (!(value >= 0.0)) reader.fail("stubbornness must be >= 0");
    profile.values[static_cast<std::size_t>(index)] = value;
  }
  return profile;
}

StubbornnessProfile read_profile_file(const std::filesystem::path& path) {
  return read_from_file(path, read_profile);
}

void write_profile(std::ostream& out, const StubbornnessProfile& d) {
  out << "nodes " << d.size() << '\n';
  for (int j = 0; j < d.size(); ++j) {
    out << "d " << j << ' ' << format_value(d.values[static_cast<std::size_t>(j)]) << '\n';
  }
}

CompositeSpec read_composite_spec(std::istream& in, const std::string& name) {
  LineReader reader(in, name);
  std::istringstream tokens;
  if (!reader.next(tokens)) reader.fail("missing 'subgraphs K' header");
  reader.expect_keyword(tokens, "subgraphs");
  const int count = reader.expect<int>(tokens, "subgraph count");
  reader.expect_end(tokens);
  if (count < 1) reader.fail("subgraph count must be >= 1");

  std::vector<int> sizes(static_cast<std::size_t>(count), -1);
  std::vector<std::vector<Edge>> edges(static_cast<std::size_t>(count));
  std::vector<int> bridges;
  CompositeSpec spec;

  auto check_index = [&](int i) {
    if (i < 0 || i >= count) reader.fail("subgraph index " + std::to_string(i) + " out of range");
  };

  while (reader.next(tokens)) {
    std::string keyword;
    tokens >> keyword;
    if (keyword == "subgraph") {
      const int i = reader.expect<int>(tokens, "subgraph index");
      check_index(i);
      reader.expect_keyword(tokens, "nodes");
      const int m = reader.expect<int>(tokens, "node count");
      reader.expect_end(tokens);
      if (sizes[static_cast<std::size_t>(i)] >= 0) {
        reader.fail("duplicate 'subgraph " + std::to_string(i) + "' declaration");
      }
      sizes[static_cast<std::size_t>(i)] = m;
    } else if (keyword == "subgraph-edge") {
      const int i = reader.expect<int>(tokens, "subgraph index");
      check_index(i);
      const int u = reader.expect<int>(tokens, "edge endpoint");
      const int v = reader.expect<int>(tokens, "edge endpoint");
      reader.expect_end(tokens);
      edges[static_cast<std::size_t>(i)].emplace_back(u, v);
    } else if (keyword == "bridge") {
      const int i = reader.expect<int>(tokens, "subgraph index");
      check_index(i);
      const int node = reader.expect<int>(tokens, "bridge node");
      reader.expect_end(tokens);
      if (bridges.empty()) bridges.assign(static_cast<std::size_t>(count), -1);
      bridges[static_cast<std::size_t>(i)] = node;
    } else if (keyword == "connect") {
      const int i = reader.expect<int>(tokens, "subgraph index");
      const int u = reader.expect<int>(tokens, "node index");
      const int j = reader.expect<int>(tokens, "subgraph index");
      const int v = reader.expect<int>(tokens, "node index");
      reader.expect_end(tokens);
      check_index(i);
      check_index(j);
      spec.connecting_edges.push_back({SubgraphNode{i, u}, SubgraphNode{j, v}});
    } else {
      reader.fail("unknown keyword '" + keyword + "'");
    }
  }

  for (int i = 0; i < count; ++i) {
    if (sizes[static_cast<std::size_t>(i)] < 0) {
      throw ParseError(name + ": subgraph " + std::to_string(i) + " was never declared");
    }
    try {
      spec.subgraphs.emplace_back(sizes[static_cast<std::size_t>(i)],
                                  std::move(edges[static_cast<std::size_t>(i)]));
    } catch (const std::invalid_argument& err) {
      throw ParseError(name + ": subgraph " + std::to_string(i) + ": " + err.what());
    }
  }
  if (!bridges.empty()) {
    for (int i = 0; i < count; ++i) {
      if (bridges[static_cast<std::size_t>(i)] < 0) {
        throw ParseError(name + ": bridge node missing for subgraph " + std::to_string(i));
      }
    }
    spec.bridge_nodes = std::move(bridges);
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& err) {
    throw ParseError(name + ": " + err.what());
  }
  return spec;
}

CompositeSpec read_composite_spec_file(const std::filesystem::path& path) {
  return read_from_file(path, read_composite_spec);
}

void write_composite_spec(std::ostream& out, const CompositeSpec& spec) {
  out << "subgraphs " << spec.subgraph_count() << '\n';
  for (int i = 0; i < spec.subgraph_count(); ++i) {
    const Graph& g = spec.subgraphs[static_cast<std::size_t>(i)];
    out << "subgraph " << i << " nodes " << g.node_count() << '\n';
    for (const auto& [u, v] : g.edges()) {
      out << "subgraph-edge " << i << ' ' << u << ' ' << v << '\n';
    }
  }
  if (spec.bridge_nodes) {
    for (int i = 0; i < spec.subgraph_count(); ++i) {
      out << "bridge " << i << ' ' << (*spec.bridge_nodes)[static_cast<std::size_t>(i)] << '\n';
    }
  }
  for (const auto& [a, b] : spec.connecting_edges) {
    out << "connect " << a.subgraph << ' ' << a.node << ' ' << b.subgraph << ' ' << b.node << '\n';
  }
}

}  // namespace cohnet
