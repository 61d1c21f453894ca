#include "minorpack/enumerate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "minorpack/errors.hpp"
#include "minorpack/minors.hpp"

namespace minorpack {

namespace {

std::mutex cache_mutex;

constexpr int kMaxEnumeratedVertices = 8;

std::vector<Graph> extend_all(const std::vector<Graph>& smaller, int n) {
    std::set<std::string> seen;
    std::vector<Graph> out;
    for (const auto& parent : smaller) {
        for (uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
            auto edges = parent.edges();
            for (int v = 0; v < n - 1; ++v)
                if (mask & (1u << v)) edges.emplace_back(v, n - 1);
            Graph g(n, edges);
            auto key = canonical_form({g, {}}).encoding;
            if (seen.insert(key).second) out.push_back(std::move(g));
        }
    }
    return out;
}

}  // namespace

const std::vector<Graph>& all_graphs_up_to_iso(int n) {
    if (n < 0 || n > kMaxEnumeratedVertices)
        throw CapExceededError("all_graphs_up_to_iso: n out of supported range");
    static std::vector<std::vector<Graph>> cache{{Graph(0)}};
    std::lock_guard<std::mutex> lock(cache_mutex);
    while (static_cast<int>(cache.size()) <= n)
        cache.push_back(extend_all(cache.back(), static_cast<int>(cache.size())));
    return cache[n];
}

std::vector<Graph> connected_graphs_up_to_iso(int n) {
    std::vector<Graph> out;
    for (const auto& g : all_graphs_up_to_iso(n))
        if (n >= 1 && is_connected(g)) out.push_back(g);
    return out;
}

std::vector<Graph> forests_up_to_iso(int n) {
    std::vector<Graph> out;
    for (const auto& g : all_graphs_up_to_iso(n))
        if (is_forest(g)) out.push_back(g);
    return out;
}

namespace {

// Rooted trees built as multisets of smaller rooted trees attached to a new
// root; children are chosen with non-increasing (size, index) keys so every
// multiset arises exactly once.
struct RootedTreeGen {
    std::vector<std::vector<RootedGraph>> trees;  // trees[n], 1-based sizes

    RootedTreeGen() : trees(1) {}

    void ensure(int n) {
        for (int s = static_cast<int>(trees.size()); s <= n; ++s) {
            std::vector<RootedGraph> level;
            std::vector<std::pair<int, int>> children;  // (size, index)
            compose(s - 1, s - 1, 1 << 30, children, level);
            trees.push_back(std::move(level));
        }
    }

    void compose(int budget, int max_size, int max_index, std::vector<std::pair<int, int>>& acc,
                 std::vector<RootedGraph>& out) {
        if (budget == 0) {
            out.push_back(build(acc));
            return;
        }
        for (int s = std::min(budget, max_size); s >= 1; --s) {
            int idx_cap = (s == max_size) ? max_index : static_cast<int>(trees[s].size());
            int limit = std::min(idx_cap, static_cast<int>(trees[s].size()));
            for (int i = 0; i < limit; ++i) {
                acc.emplace_back(s, i);
                compose(budget - s, s, i + 1, acc, out);
                acc.pop_back();
            }
        }
    }

    RootedGraph build(const std::vector<std::pair<int, int>>& children) {
        std::vector<std::pair<int, int>> edges;
        int next = 1;
        for (auto [s, i] : children) {
            const RootedGraph& sub = trees[s][i];
            int off = next;
            edges.emplace_back(0, sub.roots[0] + off);
            for (auto [u, v] : sub.graph.edges()) edges.emplace_back(u + off, v + off);
            next += s;
        }
        return RootedGraph{Graph(next, edges), {0}};
    }
};

}  // namespace

const std::vector<RootedGraph>& rooted_trees_up_to_iso(int n) {
    if (n < 1 || n > 14)
        throw CapExceededError("rooted_trees_up_to_iso: n out of supported range");
    static RootedTreeGen gen;
    std::lock_guard<std::mutex> lock(cache_mutex);
    gen.ensure(n);
    return gen.trees[n];
}

const std::vector<RootedGraph>& rooted_patterns_up_to_iso(int n, int root_count) {
    if (n < 0 || n > kMaxEnumeratedVertices || root_count < 0 || root_count > n)
        throw CapExceededError("rooted_patterns_up_to_iso: parameters out of range");
    static std::map<std::pair<int, int>, std::vector<RootedGraph>> cache;
    auto key = std::make_pair(n, root_count);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto base = all_graphs_up_to_iso(n);
    std::set<std::string> seen;
    std::vector<RootedGraph> out;
    std::vector<int> tuple(root_count, -1);
    for (const auto& g : base) {
        std::vector<bool> taken(n, false);
        std::function<void(int)> rec = [&](int i) {
            if (i == root_count) {
                RootedGraph rg{g, tuple};
                auto enc = canonical_form(rg).encoding;
                if (seen.insert(enc).second) out.push_back(rg);
                return;
            }
            for (int v = 0; v < n; ++v) {
                if (taken[v]) continue;
                taken[v] = true;
                tuple[i] = v;
                rec(i + 1);
                taken[v] = false;
            }
        };
        rec(0);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto [it, inserted] = cache.emplace(key, std::move(out));
    return it->second;
}

}  // namespace minorpack
