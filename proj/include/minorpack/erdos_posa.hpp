#pragma once

#include <optional>
#include <utility>

#include "minorpack/graph.hpp"
#include "minorpack/minors.hpp"
#include "minorpack/pathwidth.hpp"

namespace minorpack {

// Excluded-minor set. q = member count, r = max component count over members,
// t = vertex count of the designated (first) forest member, -1 if none.
struct Family {
    std::vector<Graph> members;
    int q = 0;
    int r = 0;
    int t = -1;
    int forest_index = -1;

    static Family make(std::vector<Graph> members);
};

struct Packing {
    std::vector<std::pair<int, MinorModel>> models;  // (member index, model)

    int size() const { return static_cast<int>(models.size()); }
};

struct Transversal {
    std::vector<int> vertices;  // sorted

    int size() const { return static_cast<int>(vertices.size()); }
};

struct OracleOptions {
    int cap = 12;  // exact-oracle host size cap
    FindModelOptions search;
};

bool verify_packing(const Family& fam, const Graph& g, const Packing& p);
bool verify_transversal(const Family& fam, const Graph& g, const Transversal& x,
                        const FindModelOptions& opts = {});

// Exact maximum packing / minimum transversal by exhaustive search.
std::pair<int, Packing> nu_exact(const Family& fam, const Graph& g, const OracleOptions& = {});
std::pair<int, Transversal> tau_exact(const Family& fam, const Graph& g,
                                      const OracleOptions& = {});

// Closed integer intervals [lo, hi].
using Interval = std::pair<int, int>;

// Picks x[i] members from family i, all pairwise vertex-disjoint, provided
// each family holds k = sum x[i] pairwise disjoint members. Throws
// std::invalid_argument when the hypothesis fails to carry the greedy through.
std::vector<std::vector<Interval>> select_disjoint_subpaths(
    int path_len, const std::vector<std::vector<Interval>>& families, const std::vector<int>& x);

struct PackingOrTransversal {
    std::optional<Packing> packing;        // of the requested size s
    std::optional<Transversal> transversal;
};

// Window greedy over a path decomposition: either s vertex-disjoint models of
// one member, or a transversal assembled from hitting bags (size <= s*q*r*t
// for width <= t-1).
PackingOrTransversal packing_or_transversal_bounded_pw(const Family& fam, const Graph& g,
                                                       const PathDecomposition& pd, int s,
                                                       const OracleOptions& = {});

// Recursive O(k log k) transversal for a single tree (k = nu_T):
// |X| <= 3(t+1)k log2((t+1)k) - t.
Transversal klogk_transversal(const Graph& tree, const Graph& g, const OracleOptions& = {});

// Tree completion of a forest: connects components by repeatedly joining the
// lexicographically smallest eligible vertex pair.
Graph tree_completion(const Graph& forest);

// Composed transversal for a family containing a forest: tree transversal
// first, then the bounded-pathwidth pass on what is left.
Transversal forest_transversal(const Family& fam, const Graph& g, const OracleOptions& = {});

}  // namespace minorpack
