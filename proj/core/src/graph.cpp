#include "qglab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qglab/errors.hpp"

namespace qglab {

Graph Graph::empty(int n) {
  if (n < 1) throw ParameterOutOfRange("Graph: vertex count must be positive");
  return Graph{n, Eigen::MatrixXi::Zero(n, n)};
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g = Graph::empty(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParameterOutOfRange("Graph: edge endpoint out of range");
    }
    if (u == v) throw ParameterOutOfRange("Graph: loops are not allowed");
    g.adjacency(u, v) = 1;
    g.adjacency(v, u) = 1;
  }
  return g;
}

int Graph::degree(int v) const { return adjacency.row(v).sum(); }

int Graph::edge_count() const { return adjacency.sum() / 2; }

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (adjacency(u, v) != 0) out.emplace_back(u, v);
    }
  }
  return out;
}

void validate_graph(const Graph& g) {
  if (g.adjacency.rows() != g.n || g.adjacency.cols() != g.n) {
    throw DimensionMismatch("Graph: adjacency shape does not match n");
  }
  for (int i = 0; i < g.n; ++i) {
    if (g.adjacency(i, i) != 0) {
      throw ParameterOutOfRange("Graph: diagonal must be zero (loops only appear in relations)");
    }
    for (int j = 0; j < g.n; ++j) {
      const int a = g.adjacency(i, j);
      if (a != 0 && a != 1) throw ParameterOutOfRange("Graph: adjacency entries must be 0/1");
      if (a != g.adjacency(j, i)) throw NotSymmetric("Graph: adjacency not symmetric");
    }
  }
}

Graph complete_graph(int n) {
  Graph g = Graph::empty(n);
  g.adjacency.setOnes();
  g.adjacency.diagonal().setZero();
  return g;
}

Graph path_graph(int n) {
  Graph g = Graph::empty(n);
  for (int i = 0; i + 1 < n; ++i) {
    g.adjacency(i, i + 1) = 1;
    g.adjacency(i + 1, i) = 1;
  }
  return g;
}

Graph cycle_graph(int n) {
  if (n < 3) throw ParameterOutOfRange("cycle_graph: need n >= 3");
  Graph g = path_graph(n);
  g.adjacency(0, n - 1) = 1;
  g.adjacency(n - 1, 0) = 1;
  return g;
}

std::string graph_to_edge_list(const Graph& g) {
  validate_graph(g);
  std::ostringstream out;
  auto edges = g.edges();
  out << g.n << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << (u + 1) << ' ' << (v + 1) << '\n';
  return out.str();
}

Graph graph_from_edge_list(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  long m = 0;
  if (!(in >> n >> m)) throw Error("graph_from_edge_list: missing 'n m' header");
  if (n < 1 || m < 0) throw ParameterOutOfRange("graph_from_edge_list: bad header values");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long k = 0; k < m; ++k) {
    int u = 0, v = 0;
    if (!(in >> u >> v)) {
      throw Error("graph_from_edge_list: expected " + std::to_string(m) +
                  " edges, found " + std::to_string(k));
    }
    if (u < 1 || v < 1 || u > n || v > n) {
      throw ParameterOutOfRange("graph_from_edge_list: edge endpoint out of range");
    }
    edges.emplace_back(u - 1, v - 1);
  }
  return Graph::from_edges(n, edges);
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_graph: cannot open " + path);
  out << graph_to_edge_list(g);
  if (!out) throw Error("save_graph: write failed for " + path);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_graph: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return graph_from_edge_list(buffer.str());
}

}  // namespace qglab
