#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "minorpack/graph.hpp"
#include "minorpack/minors.hpp"

namespace minorpack {

struct FolioOptions {
    int max_roots = 4;
    int max_pattern_size = 6;  // pattern enumeration cap; larger q -> BudgetExceededError
    FindModelOptions search;
};

// q-folio of a rooted graph: for each ordered root subset (keyed by a bitmask
// over root positions), the canonical encodings of all rooted minors on at
// most q vertices.
struct Folio {
    int q = 0;
    int root_count = 0;
    std::map<uint32_t, std::set<std::string>> entries;

    bool operator==(const Folio&) const = default;
    std::string digest() const;  // stable serialization
};

Folio q_folio(const RootedGraph& g, int q, const FolioOptions& opts = {});

// p-deletion q-folio: layer i records, for each root subset X with |X| <= i,
// the q-folios of (G - (X ∪ Y), R - X) over all Y outside R with |X|+|Y| = i.
struct DeletionFolio {
    int p = 0;
    int q = 0;
    int root_count = 0;
    std::vector<std::map<uint32_t, std::set<std::string>>> layers;  // folio digests

    bool operator==(const DeletionFolio&) const = default;
    std::string digest() const;
};

DeletionFolio deletion_folio(const RootedGraph& g, int p, int q, const FolioOptions& opts = {});

struct ReductionCertificate {
    std::string folio_digest;      // matched t-deletion q-folio
    std::string replacement_hex;   // canonical encoding of (G1', R)
    int original_size = 0;
    int replacement_size = 0;
    int q = 0;
    int p = 0;
};

// Everything the duality driver needs to lift packings/transversals back.
struct ReductionOutcome {
    Graph reduced;                          // G'
    std::vector<int> g_to_reduced;          // -1 for dropped G1 interior
    std::vector<int> reduced_to_g;          // -1 for fresh replacement vertices
    std::vector<int> cut;                   // X in G ids, sorted (= root order)
    RootedGraph g1;                         // (G1, R), local ids
    std::vector<int> g1_to_g;
    RootedGraph replacement;                // (G1', R), local ids
    std::vector<int> replacement_to_reduced;
    ReductionCertificate certificate;
};

struct ReduceOptions {
    int size_budget = -1;  // max candidate size; -1 = |G1| - 1
    int hard_cap = 8;      // absolute candidate size cap (enumeration support limit)
    FolioOptions folio;
};

// Searches for a strictly smaller rooted graph over the cut with the same
// t-deletion q-folio (q = t(|T|+1)) and splices it in. Empty result: no such
// graph exists up to |G1|-1 (exhaustive). Budget truncation raises
// BudgetExceededError instead of claiming exhaustiveness.
std::optional<ReductionOutcome> reduce_separation(const Graph& g, const Separation& sep,
                                                  const Graph& t_tree,
                                                  const ReduceOptions& opts = {});

}  // namespace minorpack
