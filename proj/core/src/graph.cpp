#include "scar/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "scar/errors.hpp"

namespace scar {

Graph::Graph(int vertex_count, std::span<const Edge> edges)
    : vertex_count_(vertex_count) {
  if (vertex_count < 1) {
    throw ValidationError("graph must have at least one vertex, got " +
                          std::to_string(vertex_count));
  }
  adjacency_.assign(static_cast<std::size_t>(vertex_count) + 1, {});
  edges_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (!contains(u) || !contains(v)) {
      throw ValidationError("edge " + std::to_string(i + 1) + " (" + std::to_string(u) + "," +
                            std::to_string(v) + "): vertex id out of range 1.." +
                            std::to_string(vertex_count));
    }
    if (u == v) {
      throw ValidationError("edge " + std::to_string(i + 1) + ": self-loop at vertex " +
                            std::to_string(u));
    }
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    // Report the line of the second occurrence.
    std::size_t seen = 0;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i] == *dup && ++seen == 2) {
        throw ValidationError("edge " + std::to_string(i + 1) + ": duplicate edge " +
                              std::to_string(dup->first) + "-" + std::to_string(dup->second));
      }
    }
  }
  edges_ = std::move(sorted);
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  closed_.assign(adjacency_.size(), {});
  for (Vertex v = 1; v <= vertex_count_; ++v) {
    auto& adj = adjacency_[v];
    std::sort(adj.begin(), adj.end());
    auto& closed = closed_[v];
    closed = adj;
    closed.insert(std::lower_bound(closed.begin(), closed.end(), v), v);
  }
  auto dist = distances_from(1);
  for (Vertex v = 1; v <= vertex_count_; ++v) {
    if (dist[v] < 0) {
      throw ValidationError("graph is disconnected: vertex " + std::to_string(v) +
                            " is unreachable from vertex 1");
    }
  }
}

void Graph::check_vertex(Vertex v) const {
  if (!contains(v)) {
    throw ValidationError("vertex id " + std::to_string(v) + " out of range 1.." +
                          std::to_string(vertex_count_));
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

std::span<const Vertex> Graph::closed_neighborhood(Vertex v) const {
  check_vertex(v);
  return closed_[v];
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<int> Graph::distances_from(Vertex source) const {
  check_vertex(source);
  std::vector<int> dist(adjacency_.size(), -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : adjacency_[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

namespace {

bool is_blank_or_comment(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

// Reads exactly two integers from the line; anything else is a parse error.
std::pair<long long, long long> read_pair(std::string_view line, int line_no) {
  std::istringstream in{std::string(line)};
  long long a = 0;
  long long b = 0;
  std::string rest;
  if (!(in >> a >> b) || (in >> rest)) {
    throw ParseError("line " + std::to_string(line_no) + ": expected two integers, got '" +
                     std::string(line) + "'");
  }
  return {a, b};
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::vector<std::pair<std::string_view, int>> lines;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = text.substr(start, end - start);
    if (!is_blank_or_comment(line)) lines.emplace_back(line, line_no);
    start = end + 1;
  }
  if (lines.empty()) throw ParseError("empty edge list: missing 'n m' header");

  auto [n, m] = read_pair(lines[0].first, lines[0].second);
  if (n < 1 || n > 1'000'000) {
    throw ValidationError("line " + std::to_string(lines[0].second) +
                          ": vertex count must be in 1..1000000, got " + std::to_string(n));
  }
  if (m < 0) {
    throw ParseError("line " + std::to_string(lines[0].second) + ": negative edge count");
  }
  if (lines.size() - 1 != static_cast<std::size_t>(m)) {
    throw ParseError("header announces " + std::to_string(m) + " edges but " +
                     std::to_string(lines.size() - 1) + " edge lines follow");
  }
  std::vector<Graph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [u, v] = read_pair(lines[i].first, lines[i].second);
    auto where = "line " + std::to_string(lines[i].second) + ": ";
    if (u < 1 || u > n || v < 1 || v > n) {
      throw ValidationError(where + "vertex id out of range 1.." + std::to_string(n));
    }
    if (u == v) throw ValidationError(where + "self-loop at vertex " + std::to_string(u));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  try {
    return Graph(static_cast<int>(n), edges);
  } catch (const ValidationError& e) {
    // Graph numbers edges from 1; map back to source lines for duplicates.
    std::string msg = e.what();
    if (msg.rfind("edge ", 0) == 0) {
      auto idx = std::stoul(msg.substr(5));
      throw ValidationError("line " + std::to_string(lines[idx].second) +
                            msg.substr(msg.find(':')));
    }
    throw;
  }
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace scar
