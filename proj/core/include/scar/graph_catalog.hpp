#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scar/graph.hpp"

namespace scar::catalog {

Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph star(int leaves);
Graph petersen();

/// The nine-vertex tree 1-2-3-4-5-6-7 with the branch 5-8-9. Used by the
/// delayed-capture example: cops on 6 and 1, robber on 4.
Graph delayed_capture_tree();

/// Uniform random labelled tree on n vertices (Prüfer decoding).
Graph random_tree(int n, std::uint64_t seed);

/// Every connected simple graph on 1..max_vertices vertices, one
/// representative per isomorphism class. Practical up to max_vertices = 7.
std::vector<Graph> connected_graphs_up_to(int max_vertices);

/// Looks up "P4", "C5", "K3", "S4", "petersen", "tree9".
Graph by_name(const std::string& name);

}  // namespace scar::catalog
