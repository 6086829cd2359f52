#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qglab {

// Simple undirected graph on vertices 0..n-1 (dense symmetric 0/1 adjacency,
// zero diagonal; reflexive loops are only ever added when converting to an
// operator system).
struct Graph {
  int n = 0;
  Eigen::MatrixXi adjacency;

  static Graph empty(int n);
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  bool has_edge(int u, int v) const { return adjacency(u, v) != 0; }
  int degree(int v) const;
  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;  // u < v, sorted
};

// Throws on non-square, non-symmetric, non-0/1, or nonzero-diagonal adjacency.
void validate_graph(const Graph& g);

Graph complete_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);

// Text format: header line "n m", then one "u v" line per edge, 1-indexed,
// u < v, sorted lexicographically.
std::string graph_to_edge_list(const Graph& g);
Graph graph_from_edge_list(const std::string& text);
void save_graph(const Graph& g, const std::string& path);
Graph load_graph(const std::string& path);

}  // namespace qglab
