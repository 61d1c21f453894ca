#pragma once

#include "minorpack/graph.hpp"

namespace minorpack {

inline constexpr int kDefaultPathwidthCap = 24;

// Ordered bag sequence. width is max bag size - 1 (-1 for an empty sequence).
struct PathDecomposition {
    std::vector<std::vector<int>> bags;  // each sorted
    int width = -1;

    static PathDecomposition make(std::vector<std::vector<int>> bags);
};

bool validate_path_decomposition(const Graph& g, const PathDecomposition& pd);

struct PathwidthResult {
    int width;
    PathDecomposition witness;
};

// Exact pathwidth via the vertex-separation-number subset DP.
// Throws CapExceededError when vertex_count > cap.
PathwidthResult exact_pathwidth(const Graph& g, int cap = kDefaultPathwidthCap);

struct PathwidthDecision {
    bool at_most = false;
    PathDecomposition witness;  // valid only when at_most
};

PathwidthDecision pathwidth_at_most(const Graph& g, int t, int cap = kDefaultPathwidthCap);

// Consecutive bags differ by exactly one vertex afterwards; first and last
// bags and the width are unchanged.
PathDecomposition make_nice(const PathDecomposition& pd);

// Separation whose left side carries a width-<=t path decomposition with
// first bag ∪ last bag equal to the cut.
struct TSeparation {
    Separation sep;
    PathDecomposition decomposition;  // of G[sep.left], in host vertex ids
    int t = 0;
};

bool validate_tseparation(const Graph& g, const TSeparation& ts);

// Extracts a t-separation avoiding the marked vertices in its interior, with
// |G1| >= (|G| - k(t+1))/(k+1) for k = |marked|.
TSeparation marked_separation(const Graph& g, const PathDecomposition& pd,
                              const std::vector<int>& marked, int t = -1);

// Shrinks tsep to one with |G1'| exactly target_size, G1' inside G1 and G2
// inside G2', still avoiding marked vertices in the interior.
TSeparation refine_separation(const Graph& g, const TSeparation& tsep,
                              const std::vector<int>& marked, int target_size);

// Disjoint union of three connected graphs plus a fresh apex vertex (the last
// vertex of the result) adjacent to the three designated vertices.
Graph apex_join(const Graph& g1, int v1, const Graph& g2, int v2, const Graph& g3, int v3);

}  // namespace minorpack
