#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "minorpack/graph.hpp"

namespace minorpack {

// Certificate that a pattern is a minor of a host: one connected branch set
// per pattern vertex, pairwise disjoint, every pattern edge realized.
struct MinorModel {
    std::vector<std::vector<int>> branch_sets;  // index = pattern vertex

    std::vector<int> vertex_set() const;  // union, sorted
};

struct FindModelOptions {
    long long budget = 50'000'000;  // search nodes; exhausted -> BudgetExceededError
};

// Complete branch-and-prune search. Empty result means "no model" (exact).
std::optional<MinorModel> find_model(const Graph& pattern, const Graph& host,
                                     const FindModelOptions& opts = {});

// Rooted variant: the i-th host root must lie in the branch set of the i-th
// pattern root. Requires equal root arity.
std::optional<MinorModel> find_rooted_model(const RootedGraph& pattern, const RootedGraph& host,
                                            const FindModelOptions& opts = {});

// Enumerates the vertex sets of models that use the given host vertex,
// restricted to an allowed vertex set; inclusion-minimal sets only. Used by
// the exact packing oracle.
std::vector<std::pair<uint32_t, MinorModel>> minimal_models_using(
    const Graph& pattern, const Graph& host, uint32_t allowed_mask, int required_vertex,
    const FindModelOptions& opts = {});

bool verify_model(const Graph& pattern, const Graph& host, const MinorModel& m);
bool verify_rooted_model(const RootedGraph& pattern, const RootedGraph& host, const MinorModel& m);

// Byte string identifying the isomorphism class of a rooted graph; equal iff
// isomorphic with the i-th root mapped to the i-th root.
struct CanonicalRootedGraph {
    std::string encoding;

    auto operator<=>(const CanonicalRootedGraph&) const = default;
    std::string hex() const;
};

inline constexpr int kDefaultCanonicalCap = 10;

CanonicalRootedGraph canonical_form(const RootedGraph& rg, int cap = kDefaultCanonicalCap);

// Rooted-minor test for complete binary trees: does (t, root) contain B_k?
// k = 0 is the single-vertex tree and holds for every nonempty tree.
bool has_rooted_binary_tree_minor(const RootedGraph& tree, int k);

// Complete binary tree of height h as a rooted graph (root = vertex 0).
RootedGraph complete_binary_tree(int h);

}  // namespace minorpack
