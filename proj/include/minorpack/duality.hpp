#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "minorpack/erdos_posa.hpp"
#include "minorpack/folio.hpp"
#include "minorpack/graph.hpp"
#include "minorpack/pathwidth.hpp"

namespace minorpack {

struct ConstantsOptions {
    long max_bits = 1L << 22;  // abort with OverflowError past this size
};

// Constants steering the small wide-subgraph search. Values explode quickly;
// f is exact arbitrary precision, d is the only floating-point step.
struct MainPwConstants {
    int t = 0;
    int r = 0;
    mpz_class r1, r2, r3;
    mpz_class delta;
    mpz_class eps_den;  // eps = 1 / (2r + t)
    double d = 0.0;
    mpz_class f;
};

MainPwConstants main_pw_constants(int t, int r, const ConstantsOptions& opts = {});

struct SmallPwOptions {
    ConstantsOptions constants;
    int pathwidth_cap = kDefaultPathwidthCap;
    FindModelOptions search;
};

// Either a connected vertex set containing w of pathwidth >= t and size
// <= f(t, r), or a (t-1)-separation with |G1| >= r.
struct SmallPwOutcome {
    std::optional<std::vector<int>> subgraph;
    std::optional<TSeparation> separation;
};

SmallPwOutcome find_small_pw_subgraph(const Graph& g, int w, int t, int r,
                                      const SmallPwOptions& opts = {});

// Connected vertex set of pathwidth >= t that is minimal under single-vertex
// removal. Practical surrogate for find_small_pw_subgraph.
std::vector<int> minimal_pw_subgraph(const Graph& g, int t, int cap = kDefaultPathwidthCap);

enum class DualityMode { Faithful, Practical };

struct DualityCertificate {
    Packing packing;
    Transversal transversal;
    double ratio = 0.0;             // |X| / max(1, |P|)
    std::string constant_used;      // decimal integer, can be astronomically large
    DualityMode mode = DualityMode::Practical;
    bool downgraded = false;        // faithful run fell back to practical
};

struct DualityOptions {
    OracleOptions oracle;
    ReduceOptions reduce;
    SmallPwOptions small_pw;
    int faithful_r = 9;  // stands in for max b(i); reduction enumeration cap + 1
};

DualityCertificate ep_duality(const Family& fam, const Graph& g, DualityMode mode,
                              const DualityOptions& opts = {});

bool verify_certificate(const Family& fam, const Graph& g, const DualityCertificate& cert,
                        const FindModelOptions& opts = {});

// Lifts across the folio-preserving reduction (tree family). The reduced
// packing/transversal must be valid for the reduced graph.
Packing lift_packing(const Graph& g, const Graph& tree, const ReductionOutcome& red,
                     const Packing& reduced_packing, const FolioOptions& opts = {});
Transversal lift_transversal(const Graph& g, const Graph& tree, const ReductionOutcome& red,
                             const Transversal& reduced_tv, const FolioOptions& opts = {});

struct FptOptions {
    DualityMode mode = DualityMode::Practical;
    int pathwidth_cap = kDefaultPathwidthCap;
    SmallPwOptions small_pw;
    int faithful_r = 9;
};

// Minimum-size deletion set for "pathwidth < t", bounded by k; std::nullopt
// certifies no such set exists.
std::optional<Transversal> fpt_pw_deletion(const Graph& g, int t, int k,
                                           const FptOptions& opts = {});

}  // namespace minorpack
