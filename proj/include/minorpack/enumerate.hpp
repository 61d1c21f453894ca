#pragma once

#include "minorpack/graph.hpp"

namespace minorpack {

// All simple graphs on exactly n vertices, one representative per isomorphism
// class, generated incrementally with canonical-form deduplication. Cached.
const std::vector<Graph>& all_graphs_up_to_iso(int n);

std::vector<Graph> connected_graphs_up_to_iso(int n);
std::vector<Graph> forests_up_to_iso(int n);

// Rooted trees on n vertices up to root-preserving isomorphism; vertex 0 is
// the root. Cached.
const std::vector<RootedGraph>& rooted_trees_up_to_iso(int n);

// All rooted graphs on n vertices with root_count ordered roots, one per
// root-respecting isomorphism class. Cached.
const std::vector<RootedGraph>& rooted_patterns_up_to_iso(int n, int root_count);

}  // namespace minorpack
