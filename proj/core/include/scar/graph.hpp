#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scar {

/// Vertex ids are 1-based in every public interface.
using Vertex = int;

/// Undirected, finite, simple, connected graph.
///
/// Immutable after construction. Adjacency lists are sorted ascending; every
/// downstream tie-break relies on that order.
class Graph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  /// Validates and builds. Throws ValidationError on a self-loop, duplicate
  /// edge, out-of-range id, or a disconnected result.
  Graph(int vertex_count, std::span<const Edge> edges);
  Graph(int vertex_count, std::initializer_list<Edge> edges)
      : Graph(vertex_count, std::span<const Edge>(edges.begin(), edges.size())) {}

  int vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Canonical edges (u < v), sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  bool adjacent(Vertex u, Vertex v) const;

  /// N[v] = N(v) ∪ {v}, sorted ascending.
  std::span<const Vertex> closed_neighborhood(Vertex v) const;

  /// BFS distances from `source`; index 0 is unused.
  std::vector<int> distances_from(Vertex source) const;

  bool contains(Vertex v) const { return v >= 1 && v <= vertex_count_; }

 private:
  void check_vertex(Vertex v) const;

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::vector<Vertex>> closed_;
};

/// Parses the edge-list format: a header line "n m", then m lines "u v".
/// Lines whose first non-blank character is '#' are comments.
Graph parse_graph(std::string_view text);

/// Inverse of parse_graph, in canonical order.
std::string to_edge_list(const Graph& g);

Graph load_graph_file(const std::string& path);

}  // namespace scar
