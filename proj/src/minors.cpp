#include "minorpack/minors.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

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

uint32_t neighborhood(const std::vector<uint32_t>& adj, uint32_t s) {
    uint32_t nb = 0;
    for (uint32_t rest = s; rest;) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        nb |= adj[v];
    }
    return nb & ~s;
}

int circuit_rank(const Graph& g) {
    return g.edge_count() - g.vertex_count() + static_cast<int>(connected_components(g).size());
}

int largest_component_size(const Graph& g) {
    size_t best = 0;
    for (const auto& c : connected_components(g)) best = std::max(best, c.size());
    return static_cast<int>(best);
}

// Branch-and-prune assignment of branch sets. Pattern vertices are assigned
// in a fixed order (root-forced first, then descending degree); candidates
// for each are the connected subsets of the remaining free vertices, each
// enumerated exactly once. Complete subject to the node budget.
class ModelSearch {
public:
    ModelSearch(const Graph& pattern, const Graph& host, const std::vector<int>& forced,
                uint32_t allowed, long long budget)
        : pattern_(pattern),
          host_(host),
          hadj_(adjacency_masks(host)),
          forced_(forced),
          allowed_(allowed),
          budget_(budget) {
        int p = pattern.vertex_count();
        branch_.assign(p, 0);
        pos_.assign(p, -1);
        for (int v = 0; v < p; ++v)
            if (forced_[v] >= 0) order_.push_back(v);
        std::vector<int> rest;
        for (int v = 0; v < p; ++v)
            if (forced_[v] < 0) rest.push_back(v);
        std::sort(rest.begin(), rest.end(), [&](int a, int b) {
            if (pattern.degree(a) != pattern.degree(b)) return pattern.degree(a) > pattern.degree(b);
            return a < b;
        });
        order_.insert(order_.end(), rest.begin(), rest.end());
        for (int i = 0; i < p; ++i) pos_[order_[i]] = i;
    }

    // sink returns true to stop the enumeration
    bool run(const std::function<bool(const std::vector<uint32_t>&)>& sink) {
        sink_ = &sink;
        return assign(0);
    }

    // prune any state whose used vertices already cover the given mask; every
    // completion from such a state is a strict superset
    void set_subsumption_filter(std::function<bool(uint32_t)> filter) {
        subsumed_ = std::move(filter);
    }

private:
    bool assign(int idx) {
        if (--budget_ <= 0) throw BudgetExceededError("find_model: search budget exhausted");
        int p = pattern_.vertex_count();
        if (idx == p) return (*sink_)(branch_);
        int v = order_[idx];

        std::vector<uint32_t> req;  // candidate must intersect each of these
        for (int u : pattern_.neighbors(v))
            if (pos_[u] < idx) req.push_back(neighborhood(hadj_, branch_[u]));

        uint32_t free = allowed_ & ~used_;
        int max_size = std::popcount(free) - (p - idx - 1);
        if (max_size <= 0) return false;

        // later pattern vertices must still be able to touch assigned sets
        for (int u = 0; u < p; ++u) {
            if (pos_[u] <= idx) continue;
            for (int w : pattern_.neighbors(u))
                if (pos_[w] < idx && (neighborhood(hadj_, branch_[w]) & free) == 0) return false;
        }

        if (forced_[v] >= 0) {
            uint32_t f = 1u << forced_[v];
            if (!(free & f)) return false;
            return extend(idx, f, 0, req, free, max_size);
        }
        uint32_t seeds = req.empty() ? free : (req[0] & free);
        uint32_t banned = 0;
        while (seeds) {
            int a = std::countr_zero(seeds);
            seeds &= seeds - 1;
            if (extend(idx, 1u << a, banned, req, free, max_size)) return true;
            banned |= 1u << a;
        }
        return false;
    }

    bool extend(int idx, uint32_t s, uint32_t ban, const std::vector<uint32_t>& req,
                uint32_t free, int max_size) {
        if (--budget_ <= 0) throw BudgetExceededError("find_model: search budget exhausted");
        if (subsumed_ && subsumed_(used_ | s)) return false;
        for (uint32_t r : req)
            if (!(r & s) && !(r & (free & ~ban & ~s))) return false;  // unreachable requirement

        bool ok = true;
        for (uint32_t r : req)
            if (!(r & s)) {
                ok = false;
                break;
            }
        if (ok) {
            branch_[order_[idx]] = s;
            used_ |= s;
            bool stop = assign(idx + 1);
            used_ &= ~s;
            branch_[order_[idx]] = 0;
            if (stop) return true;
        }
        if (std::popcount(s) >= max_size) return false;
        uint32_t ext = neighborhood(hadj_, s) & free & ~ban;
        while (ext) {
            int w = std::countr_zero(ext);
            ext &= ext - 1;
            if (extend(idx, s | (1u << w), ban, req, free, max_size)) return true;
            ban |= 1u << w;
        }
        return false;
    }

    const Graph& pattern_;
    const Graph& host_;
    std::vector<uint32_t> hadj_;
    std::vector<int> forced_;
    uint32_t allowed_;
    long long budget_;
    std::vector<uint32_t> branch_;
    std::vector<int> order_, pos_;
    uint32_t used_ = 0;
    const std::function<bool(const std::vector<uint32_t>&)>* sink_ = nullptr;
    std::function<bool(uint32_t)> subsumed_;
};

MinorModel model_from_masks(const std::vector<uint32_t>& masks) {
    MinorModel m;
    for (uint32_t s : masks) {
        std::vector<int> set;
        for (uint32_t rest = s; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            set.push_back(v);
        }
        m.branch_sets.push_back(std::move(set));
    }
    return m;
}

void check_host_size(const Graph& host) {
    if (host.vertex_count() > 31)
        throw CapExceededError("find_model: host too large for 32-bit search");
}

std::optional<MinorModel> search_model(const Graph& pattern, const Graph& host,
                                       const std::vector<int>& forced, uint32_t allowed,
                                       const FindModelOptions& opts) {
    check_host_size(host);
    if (pattern.vertex_count() == 0) return MinorModel{};
    std::optional<MinorModel> found;
    ModelSearch search(pattern, host, forced, allowed, opts.budget);
    search.run([&](const std::vector<uint32_t>& masks) {
        found = model_from_masks(masks);
        return true;
    });
    return found;
}

}  // namespace

std::vector<int> MinorModel::vertex_set() const {
    std::vector<int> all;
    for (const auto& s : branch_sets) all.insert(all.end(), s.begin(), s.end());
    return vset_normalize(std::move(all));
}

std::optional<MinorModel> find_model(const Graph& pattern, const Graph& host,
                                     const FindModelOptions& opts) {
    if (pattern.vertex_count() > host.vertex_count()) return std::nullopt;
    if (pattern.edge_count() > host.edge_count()) return std::nullopt;
    if (circuit_rank(pattern) > circuit_rank(host)) return std::nullopt;
    if (largest_component_size(pattern) > largest_component_size(host)) return std::nullopt;
    uint32_t allowed =
        host.vertex_count() == 32 ? ~0u : (1u << host.vertex_count()) - 1;
    return search_model(pattern, host, std::vector<int>(pattern.vertex_count(), -1), allowed,
                        opts);
}

std::optional<MinorModel> find_rooted_model(const RootedGraph& pattern, const RootedGraph& host,
                                            const FindModelOptions& opts) {
    validate_rooted(pattern);
    validate_rooted(host);
    if (pattern.roots.size() != host.roots.size())
        throw std::invalid_argument("find_rooted_model: root arity mismatch");
    if (pattern.graph.vertex_count() > host.graph.vertex_count()) return std::nullopt;
    if (pattern.graph.edge_count() > host.graph.edge_count()) return std::nullopt;
    if (circuit_rank(pattern.graph) > circuit_rank(host.graph)) return std::nullopt;
    std::vector<int> forced(pattern.graph.vertex_count(), -1);
    for (size_t i = 0; i < pattern.roots.size(); ++i) forced[pattern.roots[i]] = host.roots[i];
    uint32_t allowed =
        host.graph.vertex_count() == 32 ? ~0u : (1u << host.graph.vertex_count()) - 1;
    return search_model(pattern.graph, host.graph, forced, allowed, opts);
}

std::vector<std::pair<uint32_t, MinorModel>> minimal_models_using(const Graph& pattern,
                                                                  const Graph& host,
                                                                  uint32_t allowed_mask,
                                                                  int required_vertex,
                                                                  const FindModelOptions& opts) {
    check_host_size(host);
    std::map<uint32_t, MinorModel> collected;
    if (pattern.vertex_count() == 0) return {};
    auto subsumed = [&](uint32_t used) {
        for (const auto& [u, m] : collected)
            if ((u & used) == u) return true;
        return false;
    };
    for (int w = 0; w < pattern.vertex_count(); ++w) {
        std::vector<int> forced(pattern.vertex_count(), -1);
        forced[w] = required_vertex;
        ModelSearch search(pattern, host, forced, allowed_mask, opts.budget);
        search.set_subsumption_filter(subsumed);
        search.run([&](const std::vector<uint32_t>& masks) {
            uint32_t u = 0;
            for (uint32_t s : masks) u |= s;
            if (!collected.count(u)) collected.emplace(u, model_from_masks(masks));
            return false;
        });
    }
    std::vector<std::pair<uint32_t, MinorModel>> out;
    for (auto& [u, m] : collected) {
        bool minimal = true;
        for (auto& [u2, m2] : collected)
            if (u2 != u && (u2 & u) == u2) {
                minimal = false;
                break;
            }
        if (minimal) out.emplace_back(u, m);
    }
    return out;
}

bool verify_model(const Graph& pattern, const Graph& host, const MinorModel& m) {
    if (static_cast<int>(m.branch_sets.size()) != pattern.vertex_count()) return false;
    std::vector<bool> used(host.vertex_count(), false);
    for (const auto& s : m.branch_sets) {
        if (s.empty()) return false;
        for (int v : s) {
            if (v < 0 || v >= host.vertex_count()) return false;
            if (used[v]) return false;  // disjointness
            used[v] = true;
        }
        if (!is_connected(induced_subgraph(host, s).graph)) return false;
    }
    for (auto [x, y] : pattern.edges()) {
        bool linked = false;
        for (int u : m.branch_sets[x]) {
            for (int v : m.branch_sets[y])
                if (host.has_edge(u, v)) {
                    linked = true;
                    break;
                }
            if (linked) break;
        }
        if (!linked) return false;
    }
    return true;
}

bool verify_rooted_model(const RootedGraph& pattern, const RootedGraph& host,
                         const MinorModel& m) {
    if (!verify_model(pattern.graph, host.graph, m)) return false;
    if (pattern.roots.size() != host.roots.size()) return false;
    for (size_t i = 0; i < pattern.roots.size(); ++i)
        if (!vset_contains(m.branch_sets[pattern.roots[i]], host.roots[i])) return false;
    return true;
}

std::string CanonicalRootedGraph::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned char c : encoding) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

namespace {

std::string encode_with_labels(const Graph& g, int root_count, const std::vector<int>& label) {
    int n = g.vertex_count();
    std::string out;
    out.push_back(static_cast<char>(n));
    out.push_back(static_cast<char>(root_count));
    int bits = n * (n - 1) / 2;
    std::string body((bits + 7) / 8, '\0');
    for (auto [u, v] : g.edges()) {
        int a = label[u], b = label[v];
        if (a > b) std::swap(a, b);
        int pos = a * n - a * (a + 1) / 2 + (b - a - 1);  // upper triangle index
        body[pos / 8] = static_cast<char>(body[pos / 8] | (1 << (pos % 8)));
    }
    return out + body;
}

}  // namespace

CanonicalRootedGraph canonical_form(const RootedGraph& rg, int cap) {
    validate_rooted(rg);
    int n = rg.graph.vertex_count();
    if (n > cap)
        throw CapExceededError("canonical_form: graph larger than cap " + std::to_string(cap));
    int k = static_cast<int>(rg.roots.size());

    std::vector<int> label(n, -1);
    for (int i = 0; i < k; ++i) label[rg.roots[i]] = i;

    // group non-roots by an isomorphism-respecting invariant so only
    // within-class permutations are explored
    std::map<std::pair<int, uint32_t>, std::vector<int>> classes;
    for (int v = 0; v < n; ++v) {
        if (label[v] >= 0) continue;
        uint32_t rmask = 0;
        for (int i = 0; i < k; ++i)
            if (rg.graph.has_edge(v, rg.roots[i])) rmask |= 1u << i;
        classes[{rg.graph.degree(v), rmask}].push_back(v);
    }

    std::vector<std::vector<int>> groups;
    for (auto& [key, vs] : classes) groups.push_back(vs);  // already sorted by key and id

    std::string best;
    std::vector<int> slot_of_group;  // starting label of each group block
    {
        int next = k;
        for (auto& grp : groups) {
            slot_of_group.push_back(next);
            next += static_cast<int>(grp.size());
        }
    }

    std::function<void(size_t)> rec = [&](size_t gi) {
        if (gi == groups.size()) {
            auto enc = encode_with_labels(rg.graph, k, label);
            if (best.empty() || enc < best) best = enc;
            return;
        }
        auto grp = groups[gi];
        std::sort(grp.begin(), grp.end());
        do {
            for (size_t j = 0; j < grp.size(); ++j) label[grp[j]] = slot_of_group[gi] + static_cast<int>(j);
            rec(gi + 1);
        } while (std::next_permutation(grp.begin(), grp.end()));
        for (int v : groups[gi]) label[v] = -1;
    };
    rec(0);
    return CanonicalRootedGraph{best};
}

bool has_rooted_binary_tree_minor(const RootedGraph& tree, int k) {
    validate_rooted(tree);
    if (tree.roots.size() != 1)
        throw std::invalid_argument("has_rooted_binary_tree_minor: exactly one root expected");
    if (!is_tree(tree.graph))
        throw std::invalid_argument("has_rooted_binary_tree_minor: input is not a tree");
    if (k < 0) throw std::invalid_argument("has_rooted_binary_tree_minor: negative height");
    if (k == 0) return true;

    int n = tree.graph.vertex_count();
    int root = tree.roots[0];
    std::vector<int> parent(n, -1), bfs_order;
    std::vector<bool> seen(n, false);
    bfs_order.push_back(root);
    seen[root] = true;
    for (size_t i = 0; i < bfs_order.size(); ++i)
        for (int w : tree.graph.neighbors(bfs_order[i]))
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = bfs_order[i];
                bfs_order.push_back(w);
            }

    // ancestor test via parent chains (n is tiny)
    auto is_ancestor = [&](int a, int d) {
        for (int x = parent[d]; x >= 0; x = parent[x])
            if (x == a) return true;
        return false;
    };

    std::vector<std::vector<int>> subtree(n);
    for (auto it = bfs_order.rbegin(); it != bfs_order.rend(); ++it) {
        int u = *it;
        subtree[u].push_back(u);
        for (int w : tree.graph.neighbors(u))
            if (parent[w] == u)
                subtree[u].insert(subtree[u].end(), subtree[w].begin(), subtree[w].end());
    }

    std::vector<int> f(n, 0);
    for (auto it = bfs_order.rbegin(); it != bfs_order.rend(); ++it) {
        int u = *it;
        const auto& sub = subtree[u];
        int best = 0;
        for (size_t a = 0; a < sub.size(); ++a) {
            int z1 = sub[a];
            if (z1 == u) continue;
            for (size_t b = a + 1; b < sub.size(); ++b) {
                int z2 = sub[b];
                if (z2 == u) continue;
                if (is_ancestor(z1, z2) || is_ancestor(z2, z1)) continue;
                best = std::max(best, 1 + std::min(f[z1], f[z2]));
            }
        }
        f[u] = best;
    }
    return f[root] >= k;
}

RootedGraph complete_binary_tree(int h) {
    if (h < 0) throw std::invalid_argument("complete_binary_tree: negative height");
    std::vector<std::pair<int, int>> edges;
    int next = 1;
    std::function<void(int, int)> grow = [&](int v, int depth) {
        if (depth == h) return;
        for (int c = 0; c < 2; ++c) {
            int w = next++;
            edges.emplace_back(v, w);
            grow(w, depth + 1);
        }
    };
    grow(0, 0);
    return RootedGraph{Graph(next, edges), {0}};
}

}  // namespace minorpack
