#include "scar/graph_catalog.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "scar/errors.hpp"

namespace scar::catalog {

Graph path(int n) {
  std::vector<Graph::Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

Graph cycle(int n) {
  if (n < 3) throw ValidationError("cycle needs at least 3 vertices");
  std::vector<Graph::Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(1, n);
  return Graph(n, edges);
}

Graph complete(int n) {
  std::vector<Graph::Edge> edges;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph star(int leaves) {
  std::vector<Graph::Edge> edges;
  for (Vertex v = 2; v <= leaves + 1; ++v) edges.emplace_back(1, v);
  return Graph(leaves + 1, edges);
}

Graph petersen() {
  // Outer 5-cycle 1..5, spokes i -> i+5, inner pentagram 6..10.
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(1 + i, 1 + (i + 1) % 5);
    edges.emplace_back(1 + i, 6 + i);
    edges.emplace_back(6 + i, 6 + (i + 2) % 5);
  }
  return Graph(10, edges);
}

Graph delayed_capture_tree() {
  return Graph(9, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 8}, {8, 9}});
}

Graph random_tree(int n, std::uint64_t seed) {
  if (n <= 2) return path(std::max(n, 1));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, n);
  std::vector<int> prufer(static_cast<std::size_t>(n - 2));
  for (auto& x : prufer) x = pick(rng);
  std::vector<int> degree(static_cast<std::size_t>(n) + 1, 1);
  for (int x : prufer) ++degree[x];
  std::vector<Graph::Edge> edges;
  for (int x : prufer) {
    for (Vertex leaf = 1; leaf <= n; ++leaf) {
      if (degree[leaf] == 1) {
        edges.emplace_back(leaf, x);
        --degree[leaf];
        --degree[x];
        break;
      }
    }
  }
  Vertex a = 0;
  for (Vertex v = 1; v <= n; ++v) {
    if (degree[v] == 1) {
      if (a == 0) {
        a = v;
      } else {
        edges.emplace_back(a, v);
        break;
      }
    }
  }
  return Graph(n, edges);
}

namespace {

using Mask = std::uint32_t;

// Bit index of the unordered pair {i,j}, i<j, 0-based, in an n-vertex graph.
int pair_bit(int i, int j, int n) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

bool connected(Mask mask, int n) {
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w) {
      if (w == u || seen[w]) continue;
      int bit = pair_bit(std::min(u, w), std::max(u, w), n);
      if (mask >> bit & 1U) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

Mask canonical(Mask mask, int n, const std::vector<std::vector<int>>& perms) {
  Mask best = ~Mask{0};
  for (const auto& p : perms) {
    Mask image = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (mask >> pair_bit(i, j, n) & 1U) {
          int a = std::min(p[i], p[j]);
          int b = std::max(p[i], p[j]);
          image |= Mask{1} << pair_bit(a, b, n);
        }
    best = std::min(best, image);
  }
  return best;
}

}  // namespace

std::vector<Graph> connected_graphs_up_to(int max_vertices) {
  if (max_vertices > 7) throw ValidationError("exhaustive catalog supports at most 7 vertices");
  std::vector<Graph> out;
  for (int n = 1; n <= max_vertices; ++n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    int pairs = n * (n - 1) / 2;
    std::set<Mask> seen;
    for (Mask mask = 0; mask < (Mask{1} << pairs); ++mask) {
      if (std::popcount(mask) < n - 1 || !connected(mask, n)) continue;
      Mask canon = canonical(mask, n, perms);
      if (!seen.insert(canon).second) continue;
      std::vector<Graph::Edge> edges;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (canon >> pair_bit(i, j, n) & 1U) edges.emplace_back(i + 1, j + 1);
      out.emplace_back(n, edges);
    }
  }
  return out;
}

Graph by_name(const std::string& name) {
  auto number = [&](std::size_t from) {
    try {
      return std::stoi(name.substr(from));
    } catch (const std::exception&) {
      throw ValidationError("unknown graph name '" + name + "'");
    }
  };
  if (name == "petersen") return petersen();
  if (name == "tree9" || name == "example") return delayed_capture_tree();
  if (name.size() >= 2) {
    switch (name[0]) {
      case 'P': return path(number(1));
      case 'C': return cycle(number(1));
      case 'K': return complete(number(1));
      case 'S': return star(number(1));
      default: break;
    }
  }
  throw ValidationError("unknown graph name '" + name + "'");
}

}  // namespace scar::catalog
