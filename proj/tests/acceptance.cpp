// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "minorpack/duality.hpp"
#include "minorpack/enumerate.hpp"
#include "minorpack/erdos_posa.hpp"
#include "minorpack/folio.hpp"
#include "minorpack/io.hpp"
#include "oracles_ref.hpp"
#include "testutil.hpp"

using namespace minorpack;
using testutil::clique;
using testutil::cycle;
using testutil::path;
using testutil::star;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. every connected graph on <= 7 vertices with pathwidth >= |F|-1 contains
//    every forest F with |F| <= 5; K_{t-1} rows witness tightness
void criterion1() {
    auto start = std::chrono::steady_clock::now();
    std::vector<Graph> forests;
    for (int t = 1; t <= 5; ++t)
        for (const auto& f : forests_up_to_iso(t)) forests.push_back(f);

    long violations = 0, checked = 0;
    for (int n = 1; n <= 7; ++n)
        for (const auto& g : connected_graphs_up_to_iso(n)) {
            int pw = exact_pathwidth(g).width;
            for (const auto& f : forests) {
                if (pw < f.vertex_count() - 1) continue;
                ++checked;
                if (!find_model(f, g)) ++violations;
            }
        }

    bool tight = true;
    for (int t = 3; t <= 5; ++t) {
        Graph k = clique(t - 1);
        if (exact_pathwidth(k).width != t - 2) tight = false;
        for (const auto& f : forests_up_to_iso(t))
            if (find_model(f, k)) tight = false;
    }

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%ld pairs checked, %ld violations, tightness %s, %.1fs", checked, violations,
                  tight ? "ok" : "BROKEN", seconds_since(start));
    report(1, "forest minors above the pathwidth threshold", violations == 0 && tight, detail);
}

// 2. nu/tau for {K2} equal matching and vertex-cover numbers on all graphs n<=7
void criterion2() {
    auto start = std::chrono::steady_clock::now();
    Family k2 = Family::make({clique(2)});
    long mismatches = 0, checked = 0;
    for (int n = 1; n <= 7; ++n)
        for (const auto& g : all_graphs_up_to_iso(n)) {
            ++checked;
            if (nu_exact(k2, g).first != oracles::max_matching(g)) ++mismatches;
            if (tau_exact(k2, g).first != oracles::min_vertex_cover(g)) ++mismatches;
        }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%ld graphs, %ld mismatches, %.1fs", checked,
                  mismatches, seconds_since(start));
    report(2, "Koenig agreement for {K2}", mismatches == 0, detail);
}

// 3. the k log k transversal verifies and meets its bound on 500 randoms
void criterion3() {
    auto start = std::chrono::steady_clock::now();
    std::vector<Graph> trees{clique(2), path(3), path(4), star(3)};
    Rng rng(0xC0FFEE);
    long violations = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + rng.below(12);
        Graph g = testutil::random_graph(n, rng);
        const Graph& t = trees[trial % trees.size()];
        Family tf = Family::make({t});
        Transversal x = klogk_transversal(t, g);
        if (!verify_transversal(tf, g, x)) ++violations;
        int k = nu_exact(tf, g).first;
        if (k == 0) {
            if (!x.vertices.empty()) ++violations;
        } else {
            double bound = 3.0 * (t.vertex_count() + 1) * k *
                               std::log2((t.vertex_count() + 1.0) * k) -
                           t.vertex_count();
            if (x.size() > bound) ++violations;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "500 instances, %ld violations, %.1fs", violations,
                  seconds_since(start));
    report(3, "k log k transversal bound", violations == 0, detail);
}

// 4. bounded-pathwidth transversal branch meets 2qrt*nu on 200+ randoms
void criterion4() {
    auto start = std::chrono::steady_clock::now();
    std::vector<Family> fams{Family::make({clique(2)}),          Family::make({clique(3)}),
                             Family::make({path(3)}),            Family::make({path(4)}),
                             Family::make({named_graph("2K2")}), Family::make({clique(3), path(3)})};
    Rng rng(0xBEEF);
    long violations = 0, tested = 0;
    while (tested < 200) {
        int t = 1 + rng.below(3);  // t in {1,2,3}
        int n = 1 + rng.below(10);
        Graph g = testutil::random_graph(n, rng, t == 1 ? 0u : 1 + rng.below(5), 10);
        if (t == 1) g = Graph(n);  // pathwidth < 1 means edgeless
        auto res = exact_pathwidth(g);
        if (res.width >= t) continue;
        const Family& fam = fams[tested % fams.size()];
        int nu = nu_exact(fam, g).first;
        auto out = packing_or_transversal_bounded_pw(fam, g, res.witness, nu + 1);
        if (!out.transversal) {
            ++violations;  // a packing of size nu+1 would contradict exactness
            ++tested;
            continue;
        }
        if (!verify_transversal(fam, g, *out.transversal)) ++violations;
        if (out.transversal->size() > 2 * fam.q * fam.r * t * nu) ++violations;
        ++tested;
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%ld instances, %ld violations, %.1fs", tested,
                  violations, seconds_since(start));
    report(4, "bounded-pathwidth transversal bound", violations == 0, detail);
}

// 5. separation extraction and refinement postconditions on 1000 triples each
void criterion5() {
    auto start = std::chrono::steady_clock::now();
    Rng rng(0xACE);
    long violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + rng.below(10);
        Graph g = testutil::random_graph(n, rng);
        auto pd = exact_pathwidth(g).witness;
        if (rng.chance(1, 2) && g.vertex_count() > 0) pd = make_nice(pd);
        std::vector<int> marked;
        for (int v = 0; v < n; ++v)
            if (rng.chance(1, 3)) marked.push_back(v);
        int t = std::max(pd.width, 0);
        auto ts = marked_separation(g, pd, marked, t);
        int k = static_cast<int>(marked.size());
        if (!validate_tseparation(g, ts)) ++violations;
        if (static_cast<int>(ts.sep.left.size()) * (k + 1) < n - k * (t + 1)) ++violations;
        auto interior = vset_difference(ts.sep.left, ts.sep.right);
        if (!vset_intersection(interior, marked).empty()) ++violations;
    }
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + rng.below(9);
        Graph g = testutil::random_graph(n, rng);
        auto ts = marked_separation(g, exact_pathwidth(g).witness, {});
        std::vector<int> marked;
        for (int v = 0; v < n; ++v)
            if (rng.chance(1, 4)) marked.push_back(v);
        int k = static_cast<int>(marked.size());
        int g1 = static_cast<int>(ts.sep.left.size());
        if (g1 == 0) continue;
        int limit = (g1 + k) / (k + 1);
        int ell = 1 + static_cast<int>(rng.below(static_cast<uint32_t>(limit)));
        auto refined = refine_separation(g, ts, marked, ell);
        if (!validate_tseparation(g, refined)) ++violations;
        if (static_cast<int>(refined.sep.left.size()) != ell) ++violations;
        if (!vset_difference(refined.sep.left, ts.sep.left).empty()) ++violations;
        if (!vset_difference(ts.sep.right, refined.sep.right).empty()) ++violations;
        auto interior = vset_difference(refined.sep.left, refined.sep.right);
        if (!vset_intersection(interior, marked).empty()) ++violations;
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "2x1000 triples, %ld violations, %.1fs", violations,
                  seconds_since(start));
    report(5, "separation extraction and refinement", violations == 0, detail);
}

// 6. trees without a B_{k+1} rooted minor obey the size bound, k <= 2
void criterion6() {
    auto start = std::chrono::steady_clock::now();
    long violations = 0, checked = 0;
    for (int n = 1; n <= 12; ++n)
        for (const auto& t : rooted_trees_up_to_iso(n)) {
            int height = 0, maxdeg = 0;
            for (auto [v, d] : bfs_distances(t.graph, t.roots[0]))
                height = std::max(height, d);
            for (int v = 0; v < t.graph.vertex_count(); ++v)
                maxdeg = std::max(maxdeg, t.graph.degree(v));
            for (int k = 0; k <= 2; ++k) {
                if (has_rooted_binary_tree_minor(t, k + 1)) continue;
                ++checked;
                double bound = std::pow(height + 1.0, k + 1) * std::pow(maxdeg + 1.0, k + 1);
                if (t.graph.vertex_count() > bound) ++violations;
            }
        }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%ld tree/k pairs, %ld violations, %.1fs", checked,
                  violations, seconds_since(start));
    report(6, "binary-tree-free size bound", violations == 0, detail);
}

// 7. rooted trees embed in wide connected rooted hosts (pathwidth >= 2t-2)
void criterion7() {
    auto start = std::chrono::steady_clock::now();
    std::vector<RootedGraph> patterns;
    for (int t = 1; t <= 3; ++t)
        for (const auto& tree : rooted_trees_up_to_iso(t)) patterns.push_back(tree);

    long violations = 0, checked = 0;
    for (int n = 1; n <= 7; ++n)
        for (const auto& g : connected_graphs_up_to_iso(n)) {
            int pw = exact_pathwidth(g).width;
            for (const auto& pattern : patterns) {
                int t = pattern.graph.vertex_count();
                if (pw < 2 * t - 2) continue;
                for (int w = 0; w < n; ++w) {
                    ++checked;
                    if (!find_rooted_model(pattern, {g, {w}})) ++violations;
                }
            }
        }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%ld rooted pairs, %ld violations, %.1fs", checked,
                  violations, seconds_since(start));
    report(7, "rooted tree minors above pathwidth 2t-2", violations == 0, detail);
}

// 8. apex joins of pathwidth->=k parts reach pathwidth >= k+1 (100 per k)
void criterion8() {
    auto start = std::chrono::steady_clock::now();
    Rng rng(0xA9E);
    long violations = 0;
    for (int k = 1; k <= 3; ++k) {
        for (int trial = 0; trial < 100; ++trial) {
            Graph parts[3];
            int picks[3];
            for (int i = 0; i < 3; ++i) {
                for (;;) {
                    int n = std::max(k + 1, 3) +
                            static_cast<int>(rng.below(static_cast<uint32_t>(8 - std::max(k + 1, 3) + 1)));
                    Graph g = testutil::random_graph(n, rng, 4 + rng.below(5), 10);
                    if (!is_connected(g)) continue;
                    if (pathwidth_at_most(g, k - 1).at_most) continue;  // need pw >= k
                    parts[i] = g;
                    picks[i] = static_cast<int>(rng.below(static_cast<uint32_t>(n)));
                    break;
                }
            }
            Graph joined = apex_join(parts[0], picks[0], parts[1], picks[1], parts[2], picks[2]);
            if (pathwidth_at_most(joined, k, 26).at_most) ++violations;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "300 joins, %ld violations, %.1fs", violations,
                  seconds_since(start));
    report(8, "apex join raises pathwidth", violations == 0, detail);
}

// 9. the folio reduction preserves nu and tau on constructed pendants
void criterion9() {
    auto start = std::chrono::steady_clock::now();
    struct Instance {
        Graph g;
        Separation sep;
        Graph tree;
    };
    std::vector<Instance> instances;

    auto pendant = [](const Graph& side, int cut_vertex, const Graph& tail) {
        // side holds the cut vertex; tail is attached to it on the other side
        int n1 = side.vertex_count();
        auto edges = side.edges();
        int base = n1;
        for (auto [u, v] : tail.edges()) edges.emplace_back(u + base, v + base);
        if (tail.vertex_count() > 0) edges.emplace_back(cut_vertex, base);
        Graph g(n1 + tail.vertex_count(), edges);
        std::vector<int> left;
        for (int v = 0; v < n1; ++v) left.push_back(v);
        std::vector<int> right{cut_vertex};
        for (int v = n1; v < g.vertex_count(); ++v) right.push_back(v);
        return Instance{g, Separation::make(left, right), Graph()};
    };

    // pendant stars against P4 (stars have no P4 minor); m >= 6 is where a
    // strictly smaller star carries the same 1-deletion 5-folio
    for (int m = 6; m <= 8; ++m)
        for (const auto& tail : {path(2), path(3), path(4), cycle(3)}) {
            auto inst = pendant(star(m), 0, tail);
            inst.tree = path(4);
            instances.push_back(inst);
        }
    // one pendant edge plus isolated padding against P3
    for (int j = 3; j <= 5; ++j)
        for (const auto& tail : {path(3), cycle(3)}) {
            std::vector<std::pair<int, int>> side_edges{{0, 1}};
            Graph side(j + 2, side_edges);
            auto inst = pendant(side, 0, tail);
            inst.tree = path(3);
            instances.push_back(inst);
        }
    // edgeless sides against K2
    for (int m = 5; m <= 7; ++m)
        for (const auto& tail : {path(3), path(2)}) {
            auto inst = pendant(Graph(m), 0, tail);
            inst.tree = clique(2);
            instances.push_back(inst);
        }

    long reduced_ok = 0, violations = 0;
    OracleOptions wide;
    wide.cap = 14;
    for (const auto& inst : instances) {
        if (inst.g.vertex_count() > 14) continue;
        auto red = reduce_separation(inst.g, inst.sep, inst.tree);
        if (!red) continue;
        Family tf = Family::make({inst.tree});
        bool ok = red->reduced.vertex_count() < inst.g.vertex_count() &&
                  nu_exact(tf, red->reduced, wide).first == nu_exact(tf, inst.g, wide).first &&
                  tau_exact(tf, red->reduced, wide).first == tau_exact(tf, inst.g, wide).first;
        if (ok)
            ++reduced_ok;
        else
            ++violations;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%ld reductions preserved nu/tau, %ld violations, %.1fs", reduced_ok,
                  violations, seconds_since(start));
    report(9, "folio reduction preserves nu and tau (>=20 instances)",
           violations == 0 && reduced_ok >= 20, detail);
}

// 10. the FPT deletion routine agrees with exhaustive search, n <= 7
void criterion10() {
    auto start = std::chrono::steady_clock::now();
    long disagreements = 0, checked = 0;
    for (int n = 1; n <= 7; ++n)
        for (const auto& g : all_graphs_up_to_iso(n))
            for (int t = 1; t <= 2; ++t)
                for (int k = 0; k <= 3; ++k) {
                    ++checked;
                    auto lib = fpt_pw_deletion(g, t, k);
                    int ref = oracles::brute_force_pw_deletion(g, t, k);
                    if (lib.has_value() != (ref >= 0)) {
                        ++disagreements;
                        continue;
                    }
                    if (lib) {
                        if (lib->size() > k) ++disagreements;
                        Graph rest = delete_vertices(g, lib->vertices);
                        if (exact_pathwidth(rest).width >= t) ++disagreements;
                    }
                }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%ld cases, %ld disagreements, %.1fs", checked,
                  disagreements, seconds_since(start));
    report(10, "FPT deletion agrees with exhaustive search", disagreements == 0, detail);
}

// 11. the duality driver emits verifying certificates; the ratio experiment
//     reproduces the complete-graph rows for {K2}
void criterion11() {
    auto start = std::chrono::steady_clock::now();
    long violations = 0, attempted = 0;

    std::vector<std::pair<Family, Graph>> instances;
    instances.emplace_back(Family::make({path(3)}),
                           disjoint_union({clique(3), clique(3), clique(3), clique(3), clique(3)}));
    instances.emplace_back(Family::make({clique(2)}), Graph(5));
    instances.emplace_back(Family::make({clique(2)}), cycle(5));
    instances.emplace_back(Family::make({path(4)}), path(4));
    instances.emplace_back(Family::make({clique(3), path(3)}), clique(6));
    Rng rng(0xD1CE);
    std::vector<Family> fams{Family::make({clique(2)}), Family::make({path(3)}),
                             Family::make({path(4)}), Family::make({named_graph("2K2")})};
    for (int trial = 0; trial < 20; ++trial)
        instances.emplace_back(fams[trial % fams.size()],
                               testutil::random_graph(3 + rng.below(8), rng));

    for (auto& [fam, g] : instances) {
        for (DualityMode mode : {DualityMode::Practical, DualityMode::Faithful}) {
            ++attempted;
            auto cert = ep_duality(fam, g, mode);
            if (!verify_certificate(fam, g, cert)) ++violations;
            if (cert.transversal.size() < cert.packing.size()) ++violations;  // tau >= nu
            if (cert.mode == DualityMode::Faithful) {
                mpz_class c(cert.constant_used);
                if (mpz_class(cert.transversal.size()) >
                    c * std::max(1, cert.packing.size()))
                    ++violations;
            }
        }
    }

    Family k2 = Family::make({clique(2)});
    for (int n : {4, 6, 8}) {
        auto res = run_ratio_experiment(k2, n, 0, 1);
        const auto& row = res.rows.at(0);
        if (row.nu != n / 2 || row.tau != n - 1) ++violations;
    }

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%ld driver runs, %ld violations, K_n rows exact, %.1fs", attempted,
                  violations, seconds_since(start));
    report(11, "duality certificates and the ratio experiment", violations == 0, detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
