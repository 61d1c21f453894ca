#pragma once

// Independent reference oracles for the test suites. These deliberately take
// different algorithmic routes than the library: pathwidth by brute force
// over vertex orderings, minor containment by exhaustive vertex assignment,
// matching/vertex-cover by direct subset search.

#include "minorpack/graph.hpp"

namespace oracles {

// minimum over all vertex orderings of the maximum prefix boundary
int brute_force_pathwidth(const minorpack::Graph& g);

// enumerate every mapping host vertex -> pattern vertex or unused
bool naive_has_minor(const minorpack::Graph& pattern, const minorpack::Graph& host);

int max_matching(const minorpack::Graph& g);
int min_vertex_cover(const minorpack::Graph& g);

// smallest |X| with |X| <= k and pathwidth(G - X) < t, or -1 if none exists
int brute_force_pw_deletion(const minorpack::Graph& g, int t, int k);

}  // namespace oracles
