#include "minorpack/erdos_posa.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "minorpack/errors.hpp"

namespace minorpack {

Family Family::make(std::vector<Graph> members) {
    if (members.empty()) throw std::invalid_argument("Family: empty member list");
    Family fam;
    fam.members = std::move(members);
    fam.q = static_cast<int>(fam.members.size());
    for (int i = 0; i < fam.q; ++i) {
        const Graph& h = fam.members[i];
        if (h.vertex_count() == 0) throw std::invalid_argument("Family: empty member graph");
        fam.r = std::max(fam.r, static_cast<int>(connected_components(h).size()));
        if (fam.forest_index < 0 && is_forest(h)) {
            fam.forest_index = i;
            fam.t = h.vertex_count();
        }
    }
    return fam;
}

bool verify_packing(const Family& fam, const Graph& g, const Packing& p) {
    std::vector<bool> used(g.vertex_count(), false);
    for (const auto& [idx, model] : p.models) {
        if (idx < 0 || idx >= fam.q) return false;
        if (!verify_model(fam.members[idx], g, model)) return false;
        for (const auto& s : model.branch_sets)
            for (int v : s) {
                if (used[v]) return false;
                used[v] = true;
            }
    }
    return true;
}

bool verify_transversal(const Family& fam, const Graph& g, const Transversal& x,
                        const FindModelOptions& opts) {
    for (int v : x.vertices)
        if (v < 0 || v >= g.vertex_count()) return false;
    Graph rest = delete_vertices(g, x.vertices);
    for (const Graph& h : fam.members)
        if (find_model(h, rest, opts)) return false;
    return true;
}

namespace {

void check_oracle_cap(const Graph& g, const OracleOptions& opts, const char* what) {
    if (g.vertex_count() > opts.cap)
        throw CapExceededError(std::string(what) + ": instance too large (n=" +
                               std::to_string(g.vertex_count()) + " > cap=" +
                               std::to_string(opts.cap) + ")");
}

struct PackingSearch {
    const Family& fam;
    const Graph& g;
    const OracleOptions& opts;
    std::unordered_map<uint32_t, int> value;
    struct Choice {
        bool skip = true;
        int vertex = -1;
        int member = -1;
        uint32_t used = 0;
        MinorModel model;
    };
    std::unordered_map<uint32_t, Choice> choice;

    int nu(uint32_t mask) {
        if (mask == 0) return 0;
        auto it = value.find(mask);
        if (it != value.end()) return it->second;
        int v = std::countr_zero(mask);
        Choice best_choice;
        best_choice.vertex = v;
        int best = nu(mask & ~(1u << v));  // v unused
        for (int m = 0; m < fam.q; ++m) {
            for (auto& [u, model] : minimal_models_using(fam.members[m], g, mask, v, opts.search)) {
                int cand = 1 + nu(mask & ~u);
                if (cand > best) {
                    best = cand;
                    best_choice.skip = false;
                    best_choice.member = m;
                    best_choice.used = u;
                    best_choice.model = model;
                }
            }
        }
        value[mask] = best;
        choice[mask] = std::move(best_choice);
        return best;
    }

    Packing witness(uint32_t mask) {
        Packing p;
        while (mask) {
            auto it = choice.find(mask);
            if (it == choice.end()) break;  // value 0 tail
            const Choice& c = it->second;
            if (c.skip) {
                mask &= ~(1u << c.vertex);
            } else {
                p.models.emplace_back(c.member, c.model);
                mask &= ~c.used;
            }
        }
        return p;
    }
};

}  // namespace

std::pair<int, Packing> nu_exact(const Family& fam, const Graph& g, const OracleOptions& opts) {
    check_oracle_cap(g, opts, "nu_exact");
    uint32_t full = g.vertex_count() == 32 ? ~0u : (1u << g.vertex_count()) - 1;
    PackingSearch search{fam, g, opts, {}, {}};
    int best = search.nu(full);
    Packing p = search.witness(full);
    if (p.size() != best || !verify_packing(fam, g, p))
        throw std::logic_error("nu_exact: witness reconstruction failed");
    return {best, std::move(p)};
}

std::pair<int, Transversal> tau_exact(const Family& fam, const Graph& g,
                                      const OracleOptions& opts) {
    check_oracle_cap(g, opts, "tau_exact");
    int n = g.vertex_count();
    std::vector<int> subset;
    // increasing size, lexicographic within a size
    for (int s = 0; s <= n; ++s) {
        subset.assign(s, 0);
        std::function<std::optional<Transversal>(int, int)> rec =
            [&](int start, int depth) -> std::optional<Transversal> {
            if (depth == s) {
                Transversal x{subset};
                x.vertices = vset_normalize(x.vertices);
                if (verify_transversal(fam, g, x, opts.search)) return x;
                return std::nullopt;
            }
            for (int v = start; v < n; ++v) {
                subset[depth] = v;
                if (auto r = rec(v + 1, depth + 1)) return r;
            }
            return std::nullopt;
        };
        subset.assign(s, 0);
        if (auto r = rec(0, 0)) return {s, *r};
    }
    throw std::logic_error("tau_exact: no transversal found (unreachable)");
}

std::vector<std::vector<Interval>> select_disjoint_subpaths(
    int path_len, const std::vector<std::vector<Interval>>& families,
    const std::vector<int>& x) {
    if (families.size() != x.size())
        throw std::invalid_argument("select_disjoint_subpaths: family/count size mismatch");
    for (const auto& fam : families)
        for (auto [lo, hi] : fam)
            if (lo > hi || lo < 0 || (path_len >= 0 && hi >= path_len))
                throw std::invalid_argument("select_disjoint_subpaths: malformed interval");
    for (int c : x)
        if (c < 0) throw std::invalid_argument("select_disjoint_subpaths: negative count");

    std::vector<int> demand = x;
    std::vector<std::vector<Interval>> available = families;
    std::vector<std::vector<Interval>> out(families.size());
    int remaining = 0;
    for (int c : demand) remaining += c;

    while (remaining > 0) {
        int best_family = -1;
        Interval best{0, 0};
        for (size_t i = 0; i < available.size(); ++i) {
            if (demand[i] == 0) continue;
            for (auto iv : available[i]) {
                if (best_family < 0 || iv.second < best.second ||
                    (iv.second == best.second && iv.first < best.first)) {
                    best_family = static_cast<int>(i);
                    best = iv;
                }
            }
        }
        if (best_family < 0)
            throw std::invalid_argument(
                "select_disjoint_subpaths: hypothesis unsatisfied (fewer disjoint members than "
                "required)");
        out[best_family].push_back(best);
        --demand[best_family];
        --remaining;
        for (auto& fam : available) {
            std::vector<Interval> keep;
            for (auto iv : fam)
                if (iv.second < best.first || iv.first > best.second) keep.push_back(iv);
            fam = std::move(keep);
        }
    }
    return out;
}

namespace {

struct VertexSpan {
    int first = -1;
    int last = -1;
};

std::vector<VertexSpan> bag_spans(const Graph& g, const PathDecomposition& pd) {
    std::vector<VertexSpan> span(g.vertex_count());
    for (int i = 0; i < static_cast<int>(pd.bags.size()); ++i)
        for (int v : pd.bags[i]) {
            if (span[v].first < 0) span[v].first = i;
            span[v].last = i;
        }
    return span;
}

// vertices whose whole bag interval lies inside [a, b]
std::vector<int> window_vertices(const std::vector<VertexSpan>& span, int a, int b) {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(span.size()); ++v)
        if (span[v].first >= a && span[v].last <= b) out.push_back(v);
    return out;
}

}  // namespace

PackingOrTransversal packing_or_transversal_bounded_pw(const Family& fam, const Graph& g,
                                                       const PathDecomposition& pd, int s,
                                                       const OracleOptions& opts) {
    if (!validate_path_decomposition(g, pd))
        throw std::invalid_argument("packing_or_transversal_bounded_pw: invalid decomposition");
    if (s < 1) throw std::invalid_argument("packing_or_transversal_bounded_pw: s must be >= 1");
    int p = static_cast<int>(pd.bags.size());
    auto span = bag_spans(g, pd);

    // per (member, component): greedy maximum set of disjoint witness windows
    struct CompWindows {
        Graph component;                // pattern component
        std::vector<int> comp_vertices; // pattern ids of the component
        std::vector<Interval> windows;  // pairwise disjoint, minimal right ends
    };
    std::vector<std::vector<CompWindows>> all(fam.q);

    for (int m = 0; m < fam.q; ++m) {
        for (const auto& comp_set : connected_components(fam.members[m])) {
            CompWindows cw;
            auto sub = induced_subgraph(fam.members[m], comp_set);
            cw.component = sub.graph;
            cw.comp_vertices = sub.new_to_old;
            int a = 0;
            while (a < p) {
                int found_b = -1;
                for (int b = a; b < p; ++b) {
                    auto verts = window_vertices(span, a, b);
                    if (static_cast<int>(verts.size()) < cw.component.vertex_count()) continue;
                    auto host = induced_subgraph(g, verts);
                    if (find_model(cw.component, host.graph, opts.search)) {
                        found_b = b;
                        break;
                    }
                }
                if (found_b < 0) break;
                cw.windows.emplace_back(a, found_b);
                a = found_b + 1;
            }
            all[m].push_back(std::move(cw));
        }
    }

    // packing case: some member has s*c_i disjoint windows for every component
    for (int m = 0; m < fam.q; ++m) {
        int c = static_cast<int>(all[m].size());
        bool enough = true;
        for (const auto& cw : all[m])
            if (static_cast<int>(cw.windows.size()) < s * c) {
                enough = false;
                break;
            }
        if (!enough) continue;

        std::vector<std::vector<Interval>> families;
        for (const auto& cw : all[m]) families.push_back(cw.windows);
        auto selection = select_disjoint_subpaths(p, families, std::vector<int>(c, s));

        Packing packing;
        for (int copy = 0; copy < s; ++copy) {
            MinorModel model;
            model.branch_sets.assign(fam.members[m].vertex_count(), {});
            for (int j = 0; j < c; ++j) {
                auto [a, b] = selection[j][copy];
                auto verts = window_vertices(span, a, b);
                auto host = induced_subgraph(g, verts);
                auto part = find_model(all[m][j].component, host.graph, opts.search);
                if (!part)
                    throw std::logic_error(
                        "packing_or_transversal_bounded_pw: window lost its model");
                for (int pv = 0; pv < static_cast<int>(part->branch_sets.size()); ++pv) {
                    std::vector<int> mapped;
                    for (int hv : part->branch_sets[pv]) mapped.push_back(host.new_to_old[hv]);
                    model.branch_sets[all[m][j].comp_vertices[pv]] = vset_normalize(mapped);
                }
            }
            packing.models.emplace_back(m, std::move(model));
        }
        if (!verify_packing(fam, g, packing))
            throw std::logic_error("packing_or_transversal_bounded_pw: packing failed to verify");
        return {std::move(packing), std::nullopt};
    }

    // transversal case: hit the weakest component of each member that embeds
    std::vector<int> hit;
    for (int m = 0; m < fam.q; ++m) {
        if (!find_model(fam.members[m], g, opts.search)) continue;  // nothing to hit
        const CompWindows* weakest = nullptr;
        for (const auto& cw : all[m])
            if (!weakest || cw.windows.size() < weakest->windows.size()) weakest = &cw;
        for (auto [a, b] : weakest->windows) hit = vset_union(hit, pd.bags[b]);
    }
    Transversal x{hit};
    if (!verify_transversal(fam, g, x, opts.search))
        throw std::logic_error("packing_or_transversal_bounded_pw: transversal failed to verify");
    return {std::nullopt, std::move(x)};
}

Transversal klogk_transversal(const Graph& tree, const Graph& g, const OracleOptions& opts) {
    if (!is_tree(tree)) throw std::invalid_argument("klogk_transversal: pattern is not a tree");
    check_oracle_cap(g, opts, "klogk_transversal");
    Family fam = Family::make({tree});

    int k = nu_exact(fam, g, opts).first;
    if (k == 0) return {};

    auto pw = exact_pathwidth(g, kDefaultPathwidthCap);
    int t = tree.vertex_count();
    if (pw.width > t * (k + 1) - 2)
        throw std::logic_error("klogk_transversal: pathwidth bound violated (invariant)");
    auto nice = make_nice(pw.witness);
    int p = static_cast<int>(nice.bags.size());
    auto span = bag_spans(g, nice);

    // L_i / R_i: vertices whose interval ends before / starts after bag i
    auto left_of = [&](int i) {
        std::vector<int> out;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (span[v].last < i) out.push_back(v);
        return out;
    };
    auto right_of = [&](int i) {
        std::vector<int> out;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (span[v].first > i) out.push_back(v);
        return out;
    };
    auto nu_of = [&](const std::vector<int>& verts) {
        return nu_exact(fam, induced_subgraph(g, verts).graph, opts).first;
    };

    if (k == 1) {
        // smallest bag index whose right side has no model; the left side
        // holds at most one and vanishes one bag earlier
        int j = p - 1;
        for (int i = 0; i < p; ++i)
            if (nu_of(right_of(i)) == 0) {
                j = i;
                break;
            }
        std::vector<int> z = nice.bags[j];
        if (nu_of(left_of(j)) == 1) {
            if (j == 0) throw std::logic_error("klogk_transversal: inconsistent split at k=1");
            z = vset_union(z, nice.bags[j - 1]);
        }
        Transversal x{z};
        if (!verify_transversal(fam, g, x, opts.search))
            throw std::logic_error("klogk_transversal: base transversal failed to verify");
        return x;
    }

    // j = last index with nu(L_j) <= ceil(k/2); nu(L_i) is monotone in i
    int half_up = (k + 1) / 2;
    int lo = 0, hi = p - 1, j = 0;
    while (lo <= hi) {
        int mid = (lo + hi) / 2;
        if (nu_of(left_of(mid)) <= half_up) {
            j = mid;
            lo = mid + 1;
        } else {
            hi = mid - 1;
        }
    }
    auto lset = left_of(j);
    auto rset = right_of(j);
    if (nu_of(lset) > half_up || nu_of(rset) > k / 2)
        throw std::logic_error("klogk_transversal: split bounds violated");

    auto lsub = induced_subgraph(g, lset);
    auto rsub = induced_subgraph(g, rset);
    Transversal xl = klogk_transversal(tree, lsub.graph, opts);
    Transversal xr = klogk_transversal(tree, rsub.graph, opts);

    std::vector<int> z = nice.bags[j];
    for (int v : xl.vertices) z.push_back(lsub.new_to_old[v]);
    for (int v : xr.vertices) z.push_back(rsub.new_to_old[v]);
    Transversal x{vset_normalize(std::move(z))};
    if (!verify_transversal(fam, g, x, opts.search))
        throw std::logic_error("klogk_transversal: transversal failed to verify");
    return x;
}

Graph tree_completion(const Graph& forest) {
    if (!is_forest(forest)) throw std::invalid_argument("tree_completion: input is not a forest");
    if (forest.vertex_count() == 0)
        throw std::invalid_argument("tree_completion: empty forest");
    Graph cur = forest;
    while (true) {
        auto comps = connected_components(cur);
        if (comps.size() <= 1) return cur;
        int u = comps[0][0];
        int v = comps[1][0];  // components are ordered by smallest vertex
        auto edges = cur.edges();
        edges.emplace_back(u, v);
        cur = Graph(cur.vertex_count(), edges);
    }
}

Transversal forest_transversal(const Family& fam, const Graph& g, const OracleOptions& opts) {
    if (fam.forest_index < 0)
        throw std::invalid_argument("forest_transversal: family contains no forest");
    check_oracle_cap(g, opts, "forest_transversal");
    const Graph& forest = fam.members[fam.forest_index];
    Graph tree = tree_completion(forest);
    int t = tree.vertex_count();

    Transversal x = klogk_transversal(tree, g, opts);
    Graph rest = delete_vertices(g, x.vertices);
    std::vector<int> rest_to_g;
    {
        auto rm = vset_normalize(x.vertices);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!vset_contains(rm, v)) rest_to_g.push_back(v);
    }

    auto pw = exact_pathwidth(rest, kDefaultPathwidthCap);
    if (pw.width > t - 2)
        throw std::logic_error("forest_transversal: tree-free graph exceeds pathwidth t-2");

    int nu_rest = nu_exact(fam, rest, opts).first;
    auto outcome = packing_or_transversal_bounded_pw(fam, rest, pw.witness, nu_rest + 1, opts);
    if (!outcome.transversal)
        throw std::logic_error("forest_transversal: packing of size nu+1 is impossible");

    std::vector<int> all = x.vertices;
    for (int v : outcome.transversal->vertices) all.push_back(rest_to_g[v]);
    Transversal out{vset_normalize(std::move(all))};
    if (!verify_transversal(fam, g, out, opts.search))
        throw std::logic_error("forest_transversal: output failed to verify");
    return out;
}

}  // namespace minorpack
