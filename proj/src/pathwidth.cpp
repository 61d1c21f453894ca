#include "minorpack/pathwidth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "minorpack/errors.hpp"

namespace minorpack {

namespace {

std::vector<uint32_t> adjacency_masks(const Graph& g) {
    std::vector<uint32_t> adj(g.vertex_count(), 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    return adj;
}

// |{u in S having a neighbor outside S}|
int boundary_size(const std::vector<uint32_t>& adj, uint32_t s) {
    int b = 0;
    for (uint32_t rest = s; rest;) {
        int u = std::countr_zero(rest);
        rest &= rest - 1;
        if (adj[u] & ~s) ++b;
    }
    return b;
}

// Bags from a vertex ordering: B_i = boundary(prefix before v_i) ∪ {v_i}.
PathDecomposition bags_from_ordering(const std::vector<uint32_t>& adj,
                                     const std::vector<int>& order) {
    std::vector<std::vector<int>> bags;
    uint32_t placed = 0;
    for (int v : order) {
        std::vector<int> bag;
        for (uint32_t rest = placed; rest;) {
            int u = std::countr_zero(rest);
            rest &= rest - 1;
            if (adj[u] & ~placed) bag.push_back(u);
        }
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        bags.push_back(std::move(bag));
        placed |= 1u << v;
    }
    return PathDecomposition::make(std::move(bags));
}

// Greedy clique: a cheap lower bound used to cut hopeless decision queries.
int greedy_clique_size(const Graph& g) {
    int best = g.vertex_count() > 0 ? 1 : 0;
    for (int s = 0; s < g.vertex_count(); ++s) {
        std::vector<int> clique{s};
        for (int v : g.neighbors(s)) {
            bool ok = true;
            for (int c : clique)
                if (v != c && !g.has_edge(v, c)) {
                    ok = false;
                    break;
                }
            if (ok) clique.push_back(v);
        }
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

void check_cap(const Graph& g, int cap, const char* what) {
    if (g.vertex_count() > cap)
        throw CapExceededError(std::string(what) + ": instance too large (n=" +
                               std::to_string(g.vertex_count()) + " > cap=" + std::to_string(cap) +
                               ")");
    if (g.vertex_count() > 30)
        throw CapExceededError(std::string(what) + ": instance too large for 32-bit subset DP");
}

// Dense subset DP over all 2^n vertex sets. dp[S] = best achievable maximum
// prefix boundary over orderings of S.
std::vector<int> dense_vs_order(const Graph& g, const std::vector<uint32_t>& adj) {
    int n = g.vertex_count();
    uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<uint8_t> dp(static_cast<size_t>(full) + 1, 0);
    for (uint32_t s = 1; s <= full; ++s) {
        int b = boundary_size(adj, s);
        int best = 255;
        for (uint32_t rest = s; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            best = std::min(best, static_cast<int>(dp[s & ~(1u << v)]));
        }
        dp[s] = static_cast<uint8_t>(std::max(best, b));
    }
    // reconstruct ordering backwards
    std::vector<int> order;
    uint32_t s = full;
    while (s) {
        int pick = -1;
        for (uint32_t rest = s; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (std::max<int>(dp[s & ~(1u << v)], boundary_size(adj, s)) == dp[s]) {
                pick = v;
                break;
            }
        }
        order.push_back(pick);
        s &= ~(1u << pick);
    }
    std::reverse(order.begin(), order.end());
    return order;
}

// Threshold DP keeping only states with boundary <= t. Complete for the
// decision: every prefix of an optimal ordering stays within the threshold.
bool sparse_vs_order(const Graph& g, const std::vector<uint32_t>& adj, int t,
                     std::vector<int>& order_out) {
    int n = g.vertex_count();
    uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::unordered_map<uint32_t, int8_t> parent;  // state -> vertex added last
    parent.reserve(1024);
    parent[0] = -1;
    std::vector<uint32_t> frontier{0};
    for (int step = 0; step < n; ++step) {
        std::vector<uint32_t> next;
        for (uint32_t s : frontier) {
            uint32_t cand = full & ~s;
            while (cand) {
                int v = std::countr_zero(cand);
                cand &= cand - 1;
                uint32_t s2 = s | (1u << v);
                if (parent.count(s2)) continue;
                if (boundary_size(adj, s2) > t) continue;
                parent[s2] = static_cast<int8_t>(v);
                next.push_back(s2);
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) return false;
    }
    std::vector<int> order;
    uint32_t s = full;
    while (s) {
        int v = parent.at(s);
        order.push_back(v);
        s &= ~(1u << v);
    }
    std::reverse(order.begin(), order.end());
    order_out = std::move(order);
    return true;
}

}  // namespace

PathDecomposition PathDecomposition::make(std::vector<std::vector<int>> bags) {
    PathDecomposition pd;
    for (auto& b : bags) b = vset_normalize(std::move(b));
    pd.bags = std::move(bags);
    pd.width = -1;
    for (const auto& b : pd.bags) pd.width = std::max(pd.width, static_cast<int>(b.size()) - 1);
    return pd;
}

bool validate_path_decomposition(const Graph& g, const PathDecomposition& pd) {
    int n = g.vertex_count();
    std::vector<int> first(n, -1), last(n, -1);
    int w = -1;
    for (int i = 0; i < static_cast<int>(pd.bags.size()); ++i) {
        const auto& b = pd.bags[i];
        if (!std::is_sorted(b.begin(), b.end()) ||
            std::adjacent_find(b.begin(), b.end()) != b.end())
            return false;
        for (int v : b) {
            if (v < 0 || v >= n) return false;
            if (first[v] < 0) first[v] = i;
            last[v] = i;
        }
        w = std::max(w, static_cast<int>(b.size()) - 1);
    }
    if (w != pd.width) return false;
    for (int v = 0; v < n; ++v) {
        if (first[v] < 0) return false;  // coverage
        for (int i = first[v]; i <= last[v]; ++i)
            if (!vset_contains(pd.bags[i], v)) return false;  // contiguity
    }
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (int i = std::max(first[u], first[v]); i <= std::min(last[u], last[v]) && !covered; ++i)
            covered = vset_contains(pd.bags[i], u) && vset_contains(pd.bags[i], v);
        if (!covered) return false;
    }
    return true;
}

PathwidthResult exact_pathwidth(const Graph& g, int cap) {
    check_cap(g, cap, "exact_pathwidth");
    if (g.vertex_count() == 0) return {-1, PathDecomposition{}};
    auto adj = adjacency_masks(g);
    auto order = dense_vs_order(g, adj);
    auto witness = bags_from_ordering(adj, order);
    return {witness.width, std::move(witness)};
}

PathwidthDecision pathwidth_at_most(const Graph& g, int t, int cap) {
    check_cap(g, cap, "pathwidth_at_most");
    if (g.vertex_count() == 0) return {true, PathDecomposition{}};
    if (t < 0) return {false, {}};
    if (t >= g.vertex_count() - 1) {
        std::vector<int> all(g.vertex_count());
        for (int i = 0; i < g.vertex_count(); ++i) all[i] = i;
        return {true, PathDecomposition::make({all})};
    }
    if (greedy_clique_size(g) - 1 > t) return {false, {}};
    auto adj = adjacency_masks(g);
    if (t <= 8 || g.vertex_count() > kDefaultPathwidthCap) {
        std::vector<int> order;
        if (!sparse_vs_order(g, adj, t, order)) return {false, {}};
        return {true, bags_from_ordering(adj, order)};
    }
    auto order = dense_vs_order(g, adj);
    auto witness = bags_from_ordering(adj, order);
    if (witness.width > t) return {false, {}};
    return {true, std::move(witness)};
}

PathDecomposition make_nice(const PathDecomposition& pd) {
    // graph-independent validity: sortedness, width field, contiguity
    std::map<int, std::pair<int, int>> span;
    for (int i = 0; i < static_cast<int>(pd.bags.size()); ++i) {
        const auto& b = pd.bags[i];
        if (!std::is_sorted(b.begin(), b.end()) ||
            std::adjacent_find(b.begin(), b.end()) != b.end())
            throw std::invalid_argument("make_nice: bags must be sorted sets");
        for (int v : b) {
            if (!span.count(v))
                span[v] = {i, i};
            else
                span[v].second = i;
        }
    }
    int w = -1;
    for (const auto& b : pd.bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    if (w != pd.width) throw std::invalid_argument("make_nice: width field inconsistent");
    for (auto& [v, se] : span)
        for (int i = se.first; i <= se.second; ++i)
            if (!vset_contains(pd.bags[i], v))
                throw std::invalid_argument("make_nice: contiguity violated");

    if (pd.bags.size() <= 1) return pd;
    std::vector<std::vector<int>> out;
    out.push_back(pd.bags.front());
    for (size_t i = 1; i < pd.bags.size(); ++i) {
        const auto& prev = pd.bags[i - 1];
        const auto& next = pd.bags[i];
        if (prev == next) continue;
        auto cur = prev;
        for (int v : vset_difference(prev, next)) {
            cur = vset_difference(cur, {v});
            out.push_back(cur);
        }
        for (int v : vset_difference(next, prev)) {
            cur = vset_union(cur, {v});
            out.push_back(cur);
        }
        // the last inserted bag equals next when something was added; when the
        // step was pure removal the loop above already emitted next
    }
    auto res = PathDecomposition::make(std::move(out));
    return res;
}

bool validate_tseparation(const Graph& g, const TSeparation& ts) {
    if (!validate_separation(g, ts.sep)) return false;
    if (ts.decomposition.width > ts.t) return false;
    if (ts.sep.order > 2 * ts.t + 2) return false;
    auto sub = induced_subgraph(g, ts.sep.left);
    // decomposition is given in host ids; translate
    std::vector<std::vector<int>> local;
    for (const auto& b : ts.decomposition.bags) {
        std::vector<int> lb;
        for (int v : b) {
            if (v < 0 || v >= g.vertex_count() || sub.old_to_new[v] < 0) return false;
            lb.push_back(sub.old_to_new[v]);
        }
        local.push_back(vset_normalize(std::move(lb)));
    }
    auto pd = PathDecomposition::make(local);
    if (pd.width != ts.decomposition.width) return false;
    if (!validate_path_decomposition(sub.graph, pd)) return false;
    auto cut = vset_intersection(ts.sep.left, ts.sep.right);
    std::vector<int> ends;
    if (!ts.decomposition.bags.empty())
        ends = vset_union(ts.decomposition.bags.front(), ts.decomposition.bags.back());
    return ends == cut;
}

TSeparation marked_separation(const Graph& g, const PathDecomposition& pd,
                              const std::vector<int>& marked, int t) {
    if (!validate_path_decomposition(g, pd))
        throw std::invalid_argument("marked_separation: invalid decomposition");
    if (t < 0) t = std::max(pd.width, 0);
    if (pd.width > t) throw std::invalid_argument("marked_separation: width exceeds t");
    auto marks = vset_normalize(marked);
    for (int v : marks)
        if (v < 0 || v >= g.vertex_count())
            throw std::invalid_argument("marked_separation: marked vertex out of range");

    std::vector<int> all(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) all[i] = i;

    if (g.vertex_count() == 0) {
        TSeparation ts{Separation::make({}, {}), PathDecomposition::make({{}}), t};
        return ts;
    }

    if (marks.empty()) {
        // G1 = G, G2 = G[B_1 ∪ B_p]
        auto cut = vset_union(pd.bags.front(), pd.bags.back());
        TSeparation ts{Separation::make(all, cut), pd, t};
        if (!validate_tseparation(g, ts))
            throw std::logic_error("marked_separation: internal invariant failure (k=0)");
        return ts;
    }

    // Pad with empty end bags so the interval argument accounts for vertices
    // living only in the original first or last bag.
    std::vector<std::vector<int>> bags;
    bags.emplace_back();
    bags.insert(bags.end(), pd.bags.begin(), pd.bags.end());
    bags.emplace_back();
    int p = static_cast<int>(bags.size());

    // leftmost containing bag per marked vertex
    std::vector<int> marked_bags;
    for (int v : marks) {
        for (int i = 0; i < p; ++i)
            if (vset_contains(bags[i], v)) {
                marked_bags.push_back(i);
                break;
            }
    }
    marked_bags = vset_normalize(std::move(marked_bags));

    std::vector<int> stops;
    stops.push_back(0);
    for (int m : marked_bags) stops.push_back(m);
    stops.push_back(p - 1);
    stops = vset_normalize(std::move(stops));

    auto interior = [&](int a, int b) {
        std::vector<int> y;
        for (int i = a + 1; i < b; ++i) y = vset_union(y, bags[i]);
        return vset_difference(y, vset_union(bags[a], bags[b]));
    };

    int best_a = stops[0], best_b = stops[1];
    std::vector<int> best_y = interior(best_a, best_b);
    for (size_t j = 1; j + 1 < stops.size(); ++j) {
        auto y = interior(stops[j], stops[j + 1]);
        if (y.size() > best_y.size()) {
            best_y = std::move(y);
            best_a = stops[j];
            best_b = stops[j + 1];
        }
    }

    auto g1 = vset_union(best_y, vset_union(bags[best_a], bags[best_b]));
    auto g2 = vset_difference(all, best_y);
    std::vector<std::vector<int>> slice(bags.begin() + best_a, bags.begin() + best_b + 1);
    TSeparation ts{Separation::make(g1, g2), PathDecomposition::make(std::move(slice)), t};
    if (!validate_tseparation(g, ts))
        throw std::logic_error("marked_separation: internal invariant failure");
    auto inner = vset_difference(ts.sep.left, ts.sep.right);
    if (!vset_intersection(inner, marks).empty())
        throw std::logic_error("marked_separation: marked vertex in separation interior");
    return ts;
}

TSeparation refine_separation(const Graph& g, const TSeparation& tsep,
                              const std::vector<int>& marked, int target_size) {
    if (!validate_tseparation(g, tsep))
        throw std::invalid_argument("refine_separation: invalid t-separation");
    auto marks = vset_normalize(marked);
    int k = static_cast<int>(marks.size());
    int g1_size = static_cast<int>(tsep.sep.left.size());
    int limit = (g1_size + k) / (k + 1);  // ceil(|G1|/(k+1))
    if (target_size < 1 || target_size > limit)
        throw std::invalid_argument("refine_separation: target size out of range [1," +
                                    std::to_string(limit) + "]");
    int t = tsep.t;

    if (target_size <= t + 1) {
        std::vector<int> y(tsep.sep.left.begin(), tsep.sep.left.begin() + target_size);
        std::vector<int> all(g.vertex_count());
        for (int i = 0; i < g.vertex_count(); ++i) all[i] = i;
        TSeparation out{Separation::make(y, all), PathDecomposition::make({y}), t};
        if (!validate_tseparation(g, out))
            throw std::logic_error("refine_separation: internal invariant failure (case 1)");
        return out;
    }

    auto nice = make_nice(tsep.decomposition);
    const auto& bags = nice.bags;
    int p = static_cast<int>(bags.size());

    std::vector<int> stops{0, p - 1};
    for (int v : marks) {
        for (int i = 0; i < p; ++i)
            if (vset_contains(bags[i], v)) {
                stops.push_back(i);
                break;
            }
    }
    stops = vset_normalize(std::move(stops));

    auto window_union = [&](int a, int b) {
        std::vector<int> y;
        for (int i = a; i <= b; ++i) y = vset_union(y, bags[i]);
        return y;
    };

    int best_j = -1;
    size_t best_size = 0;
    for (size_t j = 0; j + 1 < stops.size(); ++j) {
        auto y = window_union(stops[j], stops[j + 1]);
        if (y.size() > best_size) {
            best_size = y.size();
            best_j = static_cast<int>(j);
        }
    }
    if (best_j < 0 || static_cast<int>(best_size) < target_size)
        throw std::logic_error("refine_separation: no window of the guaranteed size");

    int a = stops[best_j];
    int b = -1;
    std::vector<int> y;
    for (int i = a; i <= stops[best_j + 1]; ++i) {
        y = vset_union(y, bags[i]);
        if (static_cast<int>(y.size()) == target_size) {
            b = i;
            break;
        }
    }
    if (b < 0) throw std::logic_error("refine_separation: exact window size not reachable");

    auto cutset = vset_union(bags[a], bags[b]);
    auto inner = vset_difference(y, cutset);
    std::vector<int> all(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) all[i] = i;
    auto g2 = vset_difference(all, inner);
    std::vector<std::vector<int>> slice(bags.begin() + a, bags.begin() + b + 1);
    TSeparation out{Separation::make(y, g2), PathDecomposition::make(std::move(slice)), t};
    if (!validate_tseparation(g, out))
        throw std::logic_error("refine_separation: internal invariant failure (case 2)");
    if (!vset_intersection(vset_difference(out.sep.left, out.sep.right), marks).empty())
        throw std::logic_error("refine_separation: marked vertex in interior");
    return out;
}

Graph apex_join(const Graph& g1, int v1, const Graph& g2, int v2, const Graph& g3, int v3) {
    const Graph* gs[3] = {&g1, &g2, &g3};
    int vs[3] = {v1, v2, v3};
    for (int i = 0; i < 3; ++i) {
        if (!is_connected(*gs[i]) || gs[i]->vertex_count() == 0)
            throw std::invalid_argument("apex_join: part " + std::to_string(i + 1) +
                                        " must be connected and nonempty");
        if (vs[i] < 0 || vs[i] >= gs[i]->vertex_count())
            throw std::invalid_argument("apex_join: designated vertex out of range");
    }
    Graph base = disjoint_union({g1, g2, g3});
    int apex = base.vertex_count();
    auto edges = base.edges();
    int off = 0;
    for (int i = 0; i < 3; ++i) {
        edges.emplace_back(apex, vs[i] + off);
        off += gs[i]->vertex_count();
    }
    return Graph(apex + 1, edges);
}

}  // namespace minorpack
