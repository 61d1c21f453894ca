#include "minorpack/folio.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "minorpack/enumerate.hpp"
#include "minorpack/errors.hpp"

namespace minorpack {

namespace {

std::vector<int> mask_to_positions(uint32_t mask) {
    std::vector<int> out;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1) out.push_back(i);
    return out;
}

}  // namespace

std::string Folio::digest() const {
    std::ostringstream os;
    os << "q=" << q << ";k=" << root_count << ";";
    for (const auto& [mask, set] : entries) {
        os << mask << ":";
        for (const auto& enc : set) os << CanonicalRootedGraph{enc}.hex() << ",";
        os << ";";
    }
    return os.str();
}

std::string DeletionFolio::digest() const {
    std::ostringstream os;
    os << "p=" << p << ";q=" << q << ";k=" << root_count << ";";
    for (size_t i = 0; i < layers.size(); ++i) {
        os << "[" << i << "]";
        for (const auto& [mask, digests] : layers[i]) {
            os << mask << "{";
            for (const auto& d : digests) os << d << "|";
            os << "}";
        }
    }
    return os.str();
}

Folio q_folio(const RootedGraph& g, int q, const FolioOptions& opts) {
    validate_rooted(g);
    if (q < 1) throw std::invalid_argument("q_folio: q must be >= 1");
    int k = static_cast<int>(g.roots.size());
    if (k > opts.max_roots)
        throw BudgetExceededError("q_folio: too many roots (" + std::to_string(k) + ")");
    if (q > opts.max_pattern_size)
        throw BudgetExceededError("q_folio: pattern enumeration beyond q=" +
                                  std::to_string(opts.max_pattern_size));

    Folio folio;
    folio.q = q;
    folio.root_count = k;
    for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> host_roots;
        for (int i : mask_to_positions(mask)) host_roots.push_back(g.roots[i]);
        RootedGraph host{g.graph, host_roots};
        int rho = static_cast<int>(host_roots.size());
        std::set<std::string>& entry = folio.entries[mask];
        for (int j = rho; j <= q; ++j) {
            if (j > g.graph.vertex_count()) break;
            for (const auto& pattern : rooted_patterns_up_to_iso(j, rho)) {
                if (find_rooted_model(pattern, host, opts.search))
                    entry.insert(canonical_form(pattern).encoding);
            }
        }
    }
    return folio;
}

DeletionFolio deletion_folio(const RootedGraph& g, int p, int q, const FolioOptions& opts) {
    validate_rooted(g);
    if (p < 0) throw std::invalid_argument("deletion_folio: p must be >= 0");
    int k = static_cast<int>(g.roots.size());
    DeletionFolio df;
    df.p = p;
    df.q = q;
    df.root_count = k;
    df.layers.resize(p + 1);

    auto roots_sorted = vset_normalize(g.roots);
    std::vector<int> non_roots;
    for (int v = 0; v < g.graph.vertex_count(); ++v)
        if (!vset_contains(roots_sorted, v)) non_roots.push_back(v);

    for (int i = 0; i <= p; ++i) {
        for (uint32_t xmask = 0; xmask < (1u << k); ++xmask) {
            int xsize = std::popcount(xmask);
            if (xsize > i) continue;
            int ysize = i - xsize;
            if (ysize > static_cast<int>(non_roots.size())) continue;

            std::vector<int> deleted_roots;
            std::vector<int> kept_roots;
            for (int j = 0; j < k; ++j) {
                if (xmask & (1u << j))
                    deleted_roots.push_back(g.roots[j]);
                else
                    kept_roots.push_back(g.roots[j]);
            }

            // all Y ⊆ V - R with |Y| = ysize
            std::vector<int> pick(ysize);
            std::function<void(int, int)> rec = [&](int start, int depth) {
                if (depth == ysize) {
                    std::vector<int> removed = deleted_roots;
                    for (int idx : pick) removed.push_back(non_roots[idx]);
                    removed = vset_normalize(std::move(removed));
                    std::vector<int> keep;
                    for (int v = 0; v < g.graph.vertex_count(); ++v)
                        if (!vset_contains(removed, v)) keep.push_back(v);
                    auto sub = induced_subgraph(g.graph, keep);
                    std::vector<int> new_roots;
                    for (int r : kept_roots) new_roots.push_back(sub.old_to_new[r]);
                    Folio f = q_folio({sub.graph, new_roots}, q, opts);
                    df.layers[i][xmask].insert(f.digest());
                    return;
                }
                for (int idx = start; idx < static_cast<int>(non_roots.size()); ++idx) {
                    pick[depth] = idx;
                    rec(idx + 1, depth + 1);
                }
            };
            rec(0, 0);
        }
    }
    return df;
}

namespace {

// layer-0 folio must match before the full deletion folio is attempted
bool folio_digests_equal(const DeletionFolio& a, const DeletionFolio& b) {
    return a.layers == b.layers;
}

}  // namespace

std::optional<ReductionOutcome> reduce_separation(const Graph& g, const Separation& sep,
                                                  const Graph& t_tree, const ReduceOptions& opts) {
    if (!validate_separation(g, sep))
        throw std::invalid_argument("reduce_separation: invalid separation");
    if (!is_tree(t_tree)) throw std::invalid_argument("reduce_separation: pattern is not a tree");

    auto cut = vset_intersection(sep.left, sep.right);
    int t = static_cast<int>(cut.size());
    auto g1sub = induced_subgraph(g, sep.left);
    std::vector<int> local_roots;
    for (int x : cut) local_roots.push_back(g1sub.old_to_new[x]);
    RootedGraph g1{g1sub.graph, local_roots};

    if (find_model(t_tree, g1.graph, opts.folio.search))
        throw std::invalid_argument("reduce_separation: G1 contains the tree as a minor");

    int q = std::max(1, t * (t_tree.vertex_count() + 1));
    int p = t;
    if (q > opts.folio.max_pattern_size)
        throw BudgetExceededError("reduce_separation: folio parameter q=" + std::to_string(q) +
                                  " beyond enumeration budget");

    FolioOptions fopts = opts.folio;
    DeletionFolio target = deletion_folio(g1, p, q, fopts);
    const std::string& target0 = *target.layers[0].at(0).begin();

    int g1_size = g1.graph.vertex_count();
    int max_size = g1_size - 1;
    if (opts.size_budget >= 0) max_size = std::min(max_size, opts.size_budget);
    bool truncated = false;
    if (max_size > opts.hard_cap) {
        max_size = opts.hard_cap;
        truncated = true;
    }

    // candidate folios are expensive; cache them across calls and skip any
    // candidate that contains the excluded tree (its folio can never match)
    static std::map<std::tuple<std::string, int, int>, std::string> folio_cache;
    static std::mutex folio_cache_mutex;

    for (int size = t; size <= max_size; ++size) {
        for (const auto& cand : rooted_patterns_up_to_iso(size, t)) {
            if (find_model(t_tree, cand.graph, fopts.search)) continue;
            auto key = std::make_tuple(canonical_form(cand).encoding, q, 0);
            std::string c0_digest;
            {
                std::lock_guard<std::mutex> lock(folio_cache_mutex);
                auto it = folio_cache.find(key);
                if (it != folio_cache.end()) c0_digest = it->second;
            }
            if (c0_digest.empty()) {
                c0_digest = q_folio(cand, q, fopts).digest();
                std::lock_guard<std::mutex> lock(folio_cache_mutex);
                folio_cache.emplace(key, c0_digest);
            }
            if (c0_digest != target0) continue;
            DeletionFolio cdf = deletion_folio(cand, p, q, fopts);
            if (!folio_digests_equal(cdf, target)) continue;

            // splice: keep G2, replace G1 by the candidate; edges inside the
            // cut come from the candidate only
            ReductionOutcome out;
            out.cut = cut;
            out.g1 = g1;
            out.g1_to_g = g1sub.new_to_old;
            out.replacement = cand;

            std::vector<int> g2_vertices = sep.right;
            int n_reduced = static_cast<int>(g2_vertices.size()) + size - t;
            out.g_to_reduced.assign(g.vertex_count(), -1);
            out.reduced_to_g.assign(n_reduced, -1);
            for (int i = 0; i < static_cast<int>(g2_vertices.size()); ++i) {
                out.g_to_reduced[g2_vertices[i]] = i;
                out.reduced_to_g[i] = g2_vertices[i];
            }
            out.replacement_to_reduced.assign(size, -1);
            for (int i = 0; i < t; ++i)
                out.replacement_to_reduced[cand.roots[i]] = out.g_to_reduced[cut[i]];
            int next = static_cast<int>(g2_vertices.size());
            for (int v = 0; v < size; ++v)
                if (out.replacement_to_reduced[v] < 0) out.replacement_to_reduced[v] = next++;

            std::set<std::pair<int, int>> edges;
            auto g2sub = induced_subgraph(g, sep.right);
            for (auto [u, v] : g2sub.graph.edges()) {
                int gu = g2sub.new_to_old[u], gv = g2sub.new_to_old[v];
                bool u_cut = vset_contains(cut, gu), v_cut = vset_contains(cut, gv);
                if (u_cut && v_cut) continue;  // cut-internal edges come from the candidate
                edges.insert(std::minmax(out.g_to_reduced[gu], out.g_to_reduced[gv]));
            }
            for (auto [u, v] : cand.graph.edges())
                edges.insert(std::minmax(out.replacement_to_reduced[u],
                                         out.replacement_to_reduced[v]));
            out.reduced = Graph(n_reduced, {edges.begin(), edges.end()});

            out.certificate = ReductionCertificate{target.digest(), canonical_form(cand).hex(),
                                                   g1_size, size, q, p};
            return out;
        }
    }

    if (truncated)
        throw BudgetExceededError(
            "reduce_separation: candidate sizes above the cap were not explored");
    return std::nullopt;
}

}  // namespace minorpack
