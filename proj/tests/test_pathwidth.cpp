#include "doctest.h"
#include "minorpack/enumerate.hpp"
#include "minorpack/errors.hpp"
#include "minorpack/minors.hpp"
#include "minorpack/pathwidth.hpp"
#include "oracles_ref.hpp"
#include "testutil.hpp"

using namespace minorpack;
using testutil::clique;
using testutil::cycle;
using testutil::path;

TEST_CASE("validate path decomposition") {
    Graph p3 = path(3);
    auto ok = PathDecomposition::make({{0, 1}, {1, 2}});
    CHECK(validate_path_decomposition(p3, ok));
    CHECK(ok.width == 1);

    auto bad = PathDecomposition::make({{0, 1}, {1, 2}});
    CHECK_FALSE(validate_path_decomposition(clique(3), bad));  // edge 0-2 uncovered

    Graph g = cycle(5);
    auto single = PathDecomposition::make({{0, 1, 2, 3, 4}});
    CHECK(validate_path_decomposition(g, single));
    CHECK(single.width == 4);
}

TEST_CASE("exact pathwidth on standard families") {
    for (int n = 2; n <= 10; ++n) {
        auto res = exact_pathwidth(path(n));
        CHECK(res.width == 1);
        CHECK(validate_path_decomposition(path(n), res.witness));
    }
    for (int n = 1; n <= 8; ++n) {
        auto res = exact_pathwidth(clique(n));
        CHECK(res.width == n - 1);
        CHECK(validate_path_decomposition(clique(n), res.witness));
    }
    CHECK(exact_pathwidth(Graph(0)).width == -1);
    CHECK(exact_pathwidth(Graph(3)).width == 0);
}

TEST_CASE("C4 has pathwidth 2, frozen against the ordering oracle") {
    CHECK(oracles::brute_force_pathwidth(cycle(4)) == 2);
    auto res = exact_pathwidth(cycle(4));
    CHECK(res.width == 2);
    CHECK(validate_path_decomposition(cycle(4), res.witness));
}

TEST_CASE("complete binary tree of height 2 is a caterpillar") {
    Graph b2 = complete_binary_tree(2).graph;
    REQUIRE(b2.vertex_count() == 7);
    CHECK(oracles::brute_force_pathwidth(b2) == 1);
    CHECK(exact_pathwidth(b2).width == 1);
}

TEST_CASE("subset DP agrees with the ordering oracle up to n=7") {
    for (int n = 0; n <= 7; ++n)
        for (const auto& g : all_graphs_up_to_iso(n)) {
            auto res = exact_pathwidth(g);
            CHECK(res.width == oracles::brute_force_pathwidth(g));
            CHECK(validate_path_decomposition(g, res.witness));
        }
}

TEST_CASE("pathwidth_at_most decisions") {
    CHECK(pathwidth_at_most(path(10), 1).at_most);
    CHECK_FALSE(pathwidth_at_most(clique(4), 2).at_most);
    auto c4 = pathwidth_at_most(cycle(4), 2);
    CHECK(c4.at_most);
    CHECK(c4.witness.width <= 2);
    CHECK(validate_path_decomposition(cycle(4), c4.witness));

    // consistency with the exact solver
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = testutil::random_graph(1 + rng.below(8), rng);
        int pw = exact_pathwidth(g).width;
        for (int t = -1; t <= g.vertex_count(); ++t) {
            auto dec = pathwidth_at_most(g, t);
            CHECK(dec.at_most == (pw <= t));
            if (dec.at_most) {
                CHECK(dec.witness.width <= t);
                CHECK(validate_path_decomposition(g, dec.witness));
            }
        }
    }
    CHECK_THROWS_AS(exact_pathwidth(Graph(30)), CapExceededError);
}

TEST_CASE("make_nice inserts single-step bags") {
    auto pd = PathDecomposition::make({{0, 1}, {1, 2}});
    auto nice = make_nice(pd);
    REQUIRE(nice.bags.size() == 3);
    CHECK(nice.bags[0] == std::vector<int>{0, 1});
    CHECK(nice.bags[1] == std::vector<int>{1});
    CHECK(nice.bags[2] == std::vector<int>{1, 2});

    CHECK(make_nice(nice).bags == nice.bags);  // idempotent
    auto single = PathDecomposition::make({{0, 1, 2}});
    CHECK(make_nice(single).bags == single.bags);
}

TEST_CASE("make_nice preserves width, validity and end bags") {
    Rng rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = testutil::random_graph(1 + rng.below(9), rng);
        auto pd = exact_pathwidth(g).witness;
        auto nice = make_nice(pd);
        CHECK(nice.width == pd.width);
        CHECK(validate_path_decomposition(g, nice));
        CHECK(nice.bags.front() == pd.bags.front());
        CHECK(nice.bags.back() == pd.bags.back());
        for (size_t i = 0; i + 1 < nice.bags.size(); ++i) {
            auto diff = vset_union(vset_difference(nice.bags[i], nice.bags[i + 1]),
                                   vset_difference(nice.bags[i + 1], nice.bags[i]));
            CHECK(diff.size() == 1);
        }
    }
}

TEST_CASE("marked separation, no marks") {
    Graph g = path(6);
    auto pd = exact_pathwidth(g).witness;
    auto ts = marked_separation(g, pd, {});
    CHECK(validate_tseparation(g, ts));
    CHECK(static_cast<int>(ts.sep.left.size()) == 6);  // G1 = G
    auto cut = vset_union(pd.bags.front(), pd.bags.back());
    CHECK(ts.sep.right == cut);
}

TEST_CASE("marked separation on P10 with one middle mark") {
    Graph g = path(10);
    auto pd = exact_pathwidth(g).witness;
    REQUIRE(pd.width == 1);
    auto ts = marked_separation(g, pd, {5}, 1);
    CHECK(validate_tseparation(g, ts));
    // |G1| >= (10 - 1*2)/2 = 4
    CHECK(static_cast<int>(ts.sep.left.size()) >= 4);
    auto interior = vset_difference(ts.sep.left, ts.sep.right);
    CHECK_FALSE(vset_contains(interior, 5));
}

TEST_CASE("marked separation with everything marked") {
    Graph g = path(7);
    auto pd = exact_pathwidth(g).witness;
    std::vector<int> all{0, 1, 2, 3, 4, 5, 6};
    auto ts = marked_separation(g, pd, all);
    CHECK(validate_tseparation(g, ts));
    auto interior = vset_difference(ts.sep.left, ts.sep.right);
    CHECK(vset_intersection(interior, all).empty());
}

TEST_CASE("marked separation on the empty graph") {
    Graph g(0);
    auto pd = exact_pathwidth(g).witness;
    auto ts = marked_separation(g, pd, {});
    CHECK(ts.sep.left.empty());
    CHECK(ts.sep.right.empty());
}

TEST_CASE("marked separation bound on random triples") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + rng.below(10);
        Graph g = testutil::random_graph(n, rng);
        auto pd = exact_pathwidth(g).witness;
        if (rng.chance(1, 2)) pd = make_nice(pd);
        std::vector<int> marked;
        for (int v = 0; v < n; ++v)
            if (rng.chance(1, 3)) marked.push_back(v);
        int t = std::max(pd.width, 0);
        auto ts = marked_separation(g, pd, marked, t);
        CHECK(validate_tseparation(g, ts));
        int k = static_cast<int>(marked.size());
        // |G1| * (k+1) >= |G| - k(t+1)
        CHECK(static_cast<int>(ts.sep.left.size()) * (k + 1) >= n - k * (t + 1));
        auto interior = vset_difference(ts.sep.left, ts.sep.right);
        CHECK(vset_intersection(interior, marked).empty());
    }
}

TEST_CASE("refine separation, small target") {
    Graph g = path(8);
    auto ts = marked_separation(g, exact_pathwidth(g).witness, {});
    auto refined = refine_separation(g, ts, {}, 2);  // <= t+1
    CHECK(validate_tseparation(g, refined));
    CHECK(refined.sep.left.size() == 2);
    CHECK(static_cast<int>(refined.sep.right.size()) == 8);  // G2' = G
}

TEST_CASE("refine separation window on P10") {
    Graph g = path(10);
    auto ts = marked_separation(g, exact_pathwidth(g).witness, {});
    auto refined = refine_separation(g, ts, {}, 5);
    CHECK(validate_tseparation(g, refined));
    CHECK(refined.sep.left.size() == 5);
}

TEST_CASE("refine separation postconditions on random triples") {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + rng.below(9);
        Graph g = testutil::random_graph(n, rng);
        auto pd = exact_pathwidth(g).witness;
        std::vector<int> marked;
        for (int v = 0; v < n; ++v)
            if (rng.chance(1, 4)) marked.push_back(v);
        auto ts = marked_separation(g, pd, marked);
        int k = static_cast<int>(marked.size());
        int g1 = static_cast<int>(ts.sep.left.size());
        if (g1 == 0) continue;
        int limit = (g1 + k) / (k + 1);
        int ell = 1 + static_cast<int>(rng.below(static_cast<uint32_t>(limit)));
        auto refined = refine_separation(g, ts, marked, ell);
        CHECK(validate_tseparation(g, refined));
        CHECK(static_cast<int>(refined.sep.left.size()) == ell);
        CHECK(vset_difference(refined.sep.left, ts.sep.left).empty());    // G1' ⊆ G1
        CHECK(vset_difference(ts.sep.right, refined.sep.right).empty());  // G2 ⊆ G2'
        auto interior = vset_difference(refined.sep.left, refined.sep.right);
        CHECK(vset_intersection(interior, marked).empty());
        // boundary target always succeeds
        auto at_limit = refine_separation(g, ts, marked, limit);
        CHECK(static_cast<int>(at_limit.sep.left.size()) == limit);
    }
}

TEST_CASE("apex join shapes") {
    Graph k1(1);
    auto star = apex_join(k1, 0, k1, 0, k1, 0);
    CHECK(canonical_form({star, {}}) == canonical_form({testutil::star(3), {}}));

    Graph p2 = path(2);
    auto spider = apex_join(p2, 0, p2, 0, p2, 0);
    CHECK(spider.vertex_count() == 7);
    CHECK(is_tree(spider));
    // legs of length 2: apex neighbors have degree 2
    int apex = 6;
    CHECK(spider.degree(apex) == 3);
    for (int v : spider.neighbors(apex)) CHECK(spider.degree(v) == 2);

    Graph k3 = clique(3);
    auto joined = apex_join(k3, 0, k3, 1, k3, 2);
    CHECK(joined.vertex_count() == 10);
    CHECK(exact_pathwidth(joined).width >= 3);

    Graph disconnected(2);
    CHECK_THROWS_AS(apex_join(disconnected, 0, k1, 0, k1, 0), std::invalid_argument);
}
