#include "minorpack/duality.hpp"

#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "minorpack/errors.hpp"

namespace minorpack {

namespace {

// ---------------------------------------------------------------------------
// constants of the small wide-subgraph search

struct BigOrHuge {
    bool huge = false;
    mpz_class value;  // meaningful only when !huge
};

double log_of(const mpz_class& x) {
    signed long exp;
    double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

struct ConstantsRaw {
    BigOrHuge r1, r2, r3, delta, f;
    mpz_class eps_den;
    double d = 0.0;
    bool d_valid = false;
};

BigOrHuge f_value(int t, const mpz_class& r, long max_bits);

ConstantsRaw constants_raw(int t, const mpz_class& r, long max_bits) {
    ConstantsRaw c;
    c.eps_den = 2 * r + t;
    if (t == 0) {
        c.f = {false, 1};
        return c;
    }
    mpz_class twot = 2 * t;
    auto guard = [&](const mpz_class& v) -> BigOrHuge {
        if (mpz_sizeinbase(v.get_mpz_t(), 2) > static_cast<size_t>(max_bits)) return {true, 0};
        return {false, v};
    };
    c.r1 = guard((r + t - 1) + (r + t) * twot + r);
    if (c.r1.huge) {
        c.r2 = c.r3 = c.delta = c.f = {true, 0};
        return c;
    }
    BigOrHuge f1 = f_value(t - 1, c.r1.value, max_bits);
    if (f1.huge) {
        c.r2 = c.r3 = c.delta = c.f = {true, 0};
        return c;
    }
    c.r2 = guard((r + t - 1) * (1 + f1.value) + (r + t) * twot + r);
    BigOrHuge f2 = c.r2.huge ? BigOrHuge{true, 0} : f_value(t - 1, c.r2.value, max_bits);
    if (c.r2.huge || f2.huge) {
        c.r3 = c.delta = c.f = {true, 0};
        return c;
    }
    c.r3 = guard((r + t - 1) * (1 + f1.value + f2.value) + (r + t) * twot + r);
    BigOrHuge f3 = c.r3.huge ? BigOrHuge{true, 0} : f_value(t - 1, c.r3.value, max_bits);
    if (c.r3.huge || f3.huge) {
        c.delta = c.f = {true, 0};
        return c;
    }
    c.delta = guard((r + t) * (f1.value + f2.value + f3.value + twot + 1) + r - 1);
    if (c.delta.huge) {
        c.f = {true, 0};
        return c;
    }

    // d = max{ 2t ln(delta+1)/ln(1+eps), (2t/ln(1+eps))^2 }; eps = 1/eps_den
    double eps_den_d = c.eps_den.get_d();
    double ln1peps = std::log1p(1.0 / eps_den_d);
    if (!(ln1peps > 0) || !std::isfinite(eps_den_d)) {
        c.f = {true, 0};
        return c;
    }
    double ln_delta1 = log_of(c.delta.value + 1);
    double d = std::max(2.0 * t * ln_delta1 / ln1peps,
                        std::pow(2.0 * t / ln1peps, 2.0));
    c.d = d;
    c.d_valid = true;

    double bits_needed = (d + 1.0) * ln_delta1 / std::log(2.0);
    if (!std::isfinite(bits_needed) || bits_needed > static_cast<double>(max_bits)) {
        c.f = {true, 0};
        return c;
    }

    // f = ceil(max{delta^(d+1), delta + d + 1}) via one correctly-rounded power
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits_needed) + 64;
    mpfr_t base, expo, pow_res, alt;
    mpfr_init2(base, prec);
    mpfr_init2(expo, 64);
    mpfr_init2(pow_res, prec);
    mpfr_init2(alt, prec);
    mpfr_set_z(base, c.delta.value.get_mpz_t(), MPFR_RNDN);
    mpfr_set_d(expo, d + 1.0, MPFR_RNDN);
    mpfr_pow(pow_res, base, expo, MPFR_RNDN);
    mpfr_set_z(alt, c.delta.value.get_mpz_t(), MPFR_RNDN);
    mpfr_add_d(alt, alt, d + 1.0, MPFR_RNDN);
    if (mpfr_cmp(alt, pow_res) > 0) mpfr_set(pow_res, alt, MPFR_RNDN);
    mpfr_ceil(pow_res, pow_res);
    mpz_class f;
    mpfr_get_z(f.get_mpz_t(), pow_res, MPFR_RNDN);
    mpfr_clears(base, expo, pow_res, alt, static_cast<mpfr_ptr>(nullptr));
    c.f = {false, f};
    return c;
}

BigOrHuge f_value(int t, const mpz_class& r, long max_bits) {
    if (t == 0) return {false, 1};
    return constants_raw(t, r, max_bits).f;
}

// ---------------------------------------------------------------------------

std::vector<int> map_vertices(const std::vector<int>& local, const std::vector<int>& to_host) {
    std::vector<int> out;
    out.reserve(local.size());
    for (int v : local) out.push_back(to_host[v]);
    return vset_normalize(std::move(out));
}

MinorModel map_model(const MinorModel& m, const std::vector<int>& to_host) {
    MinorModel out;
    for (const auto& s : m.branch_sets) out.branch_sets.push_back(map_vertices(s, to_host));
    return out;
}

TSeparation map_tseparation(const TSeparation& ts, const std::vector<int>& to_host) {
    TSeparation out;
    out.t = ts.t;
    out.sep.left = map_vertices(ts.sep.left, to_host);
    out.sep.right = map_vertices(ts.sep.right, to_host);
    out.sep.order = ts.sep.order;
    std::vector<std::vector<int>> bags;
    for (const auto& b : ts.decomposition.bags) bags.push_back(map_vertices(b, to_host));
    out.decomposition = PathDecomposition::make(std::move(bags));
    return out;
}

std::vector<int> ball_vertices(const Graph& g, int w, int radius) {
    std::vector<int> out;
    for (auto [v, dist] : bfs_distances(g, w))
        if (dist <= radius) out.push_back(v);
    return vset_normalize(std::move(out));
}

}  // namespace

MainPwConstants main_pw_constants(int t, int r, const ConstantsOptions& opts) {
    if (t < 0 || r < 0) throw std::invalid_argument("main_pw_constants: negative parameter");
    auto raw = constants_raw(t, std::max(0, r), opts.max_bits);
    if (raw.f.huge)
        throw OverflowError("main_pw_constants: f(" + std::to_string(t) + "," + std::to_string(r) +
                            ") exceeds the bit budget");
    MainPwConstants out;
    out.t = t;
    out.r = r;
    out.eps_den = raw.eps_den;
    out.f = raw.f.value;
    if (t >= 1) {
        out.r1 = raw.r1.value;
        out.r2 = raw.r2.value;
        out.r3 = raw.r3.value;
        out.delta = raw.delta.value;
        out.d = raw.d;
    }
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// find_small_pw_subgraph, following the proof's induction on t

struct SmallPw {
    const SmallPwOptions& opts;

    bool pw_at_least(const Graph& g, int t) {
        if (t <= 0) return true;
        return !pathwidth_at_most(g, t - 1, opts.pathwidth_cap)
                    .at_most;
    }

    PathDecomposition width_witness(const Graph& g, int t) {
        auto dec = pathwidth_at_most(g, t, opts.pathwidth_cap);
        if (!dec.at_most) throw std::logic_error("find_small_pw_subgraph: expected width bound");
        return dec.witness;
    }

    SmallPwOutcome run(const Graph& g, int w, int t, const mpz_class& r) {
        if (w < 0 || w >= g.vertex_count())
            throw std::invalid_argument("find_small_pw_subgraph: root vertex out of range");
        if (!is_connected(g))
            throw std::invalid_argument("find_small_pw_subgraph: graph must be connected");
        if (!pw_at_least(g, t))
            throw std::invalid_argument("find_small_pw_subgraph: pathwidth below t");

        if (t == 0) return {std::vector<int>{w}, std::nullopt};

        if (r <= 1) {
            // single-vertex separation
            std::vector<int> all(g.vertex_count());
            for (int i = 0; i < g.vertex_count(); ++i) all[i] = i;
            TSeparation ts{Separation::make({0}, all), PathDecomposition::make({{0}}), t - 1};
            return {std::nullopt, std::move(ts)};
        }

        auto raw = constants_raw(t, r, opts.constants.max_bits);
        if (raw.f.huge || raw.f.value >= g.vertex_count())
            return {ball_vertices(g, w, g.vertex_count()), std::nullopt};  // G' = G

        // materialized-constants regime
        int d_int = static_cast<int>(std::floor(raw.d));
        const mpz_class& delta = raw.delta.value;

        auto dist = bfs_distances(g, w);
        int high_vertex = -1;
        for (int v = 0; v < g.vertex_count(); ++v) {
            auto it = dist.find(v);
            if (it == dist.end() || it->second > d_int) continue;
            if (mpz_class(g.degree(v)) > delta) {
                high_vertex = v;
                break;
            }
        }
        if (high_vertex < 0) return case_low_degree(g, w, t, r, raw, d_int);
        return case_high_degree(g, w, t, r, raw, d_int, high_vertex);
    }

    SmallPwOutcome case_low_degree(const Graph& g, int w, int t, const mpz_class& r,
                                   const ConstantsRaw& raw, int d_int) {
        std::vector<std::vector<int>> balls(d_int + 1);
        for (int i = 0; i <= d_int; ++i) balls[i] = ball_vertices(g, w, i);

        auto ball_graph = induced_subgraph(g, balls[d_int]);
        if (pw_at_least(ball_graph.graph, t)) return {balls[d_int], std::nullopt};

        // |H_j| <= (1+eps)|H_{j-1}| for some j; integer compare via eps_den
        const mpz_class& den = raw.eps_den;
        int j = -1;
        for (int i = 1; i <= d_int; ++i) {
            if (mpz_class(balls[i].size()) * den <= (den + 1) * mpz_class(balls[i - 1].size())) {
                j = i;
                break;
            }
        }
        if (j < 0) throw std::logic_error("find_small_pw_subgraph: no sparse growth layer");

        auto hj = induced_subgraph(g, balls[j]);
        std::vector<int> marked_local;
        for (int v : vset_difference(balls[j], balls[j - 1]))
            marked_local.push_back(hj.old_to_new[v]);
        auto pd = width_witness(hj.graph, t - 1);
        TSeparation local = marked_separation(hj.graph, pd, marked_local, t - 1);
        TSeparation hosted = map_tseparation(local, hj.new_to_old);

        if (mpz_class(hosted.sep.left.size()) < r)
            throw std::logic_error("find_small_pw_subgraph: case 1 separation too small");

        // interior is unmarked, hence inside the previous ball: closed in G
        auto interior = vset_difference(hosted.sep.left, hosted.sep.right);
        std::vector<int> all(g.vertex_count());
        for (int i = 0; i < g.vertex_count(); ++i) all[i] = i;
        TSeparation out{Separation::make(hosted.sep.left, vset_difference(all, interior)),
                        hosted.decomposition, t - 1};
        if (!validate_tseparation(g, out))
            throw std::logic_error("find_small_pw_subgraph: case 1 separation invalid");
        return {std::nullopt, std::move(out)};
    }

    // Turns an inner separation of G - X into either a small wide subgraph
    // linked to w through x, or a separation of G itself.
    SmallPwOutcome separation_or_linkup(const Graph& g, int w, int t, const mpz_class& r,
                                 const std::vector<int>& x_set, int x_vertex,
                                 const TSeparation& inner_hosted) {
        mpz_class ell = (r + t - 1) * mpz_class(x_set.size()) + (r + t) * (2 * t) + r;
        // refine to |H1| = ell exactly (no marks)
        auto sub_all = vset_union(inner_hosted.sep.left, inner_hosted.sep.right);
        auto hsub = induced_subgraph(g, sub_all);
        TSeparation local_inner;
        {
            std::vector<int> to_local(g.vertex_count(), -1);
            for (int i = 0; i < static_cast<int>(hsub.new_to_old.size()); ++i)
                to_local[hsub.new_to_old[i]] = i;
            local_inner.t = t - 1;
            local_inner.sep.left = map_vertices(inner_hosted.sep.left, to_local);
            local_inner.sep.right = map_vertices(inner_hosted.sep.right, to_local);
            local_inner.sep.order = inner_hosted.sep.order;
            std::vector<std::vector<int>> bags;
            for (const auto& b : inner_hosted.decomposition.bags)
                bags.push_back(map_vertices(b, to_local));
            local_inner.decomposition = PathDecomposition::make(std::move(bags));
        }
        TSeparation refined_local =
            refine_separation(hsub.graph, local_inner, {}, static_cast<int>(ell.get_si()));
        TSeparation refined = map_tseparation(refined_local, hsub.new_to_old);

        auto j_set = vset_union(refined.sep.left, vset_normalize(x_set));
        auto jsub = induced_subgraph(g, j_set);
        if (pw_at_least(jsub.graph, t)) {
            // the unique component of J with pathwidth >= t contains X
            for (const auto& comp : connected_components(jsub.graph)) {
                auto comp_hosted = map_vertices(comp, jsub.new_to_old);
                auto csub = induced_subgraph(g, comp_hosted);
                if (!pw_at_least(csub.graph, t)) continue;
                if (!vset_contains(comp_hosted, x_vertex))
                    throw std::logic_error("find_small_pw_subgraph: stray wide component");
                // link to w along one shortest w-x path, walking distances back
                auto dist = bfs_distances(g, w);
                int target = x_vertex;
                std::vector<int> back{target};
                int cur = target;
                while (cur != w) {
                    for (int nb : g.neighbors(cur)) {
                        auto it = dist.find(nb);
                        if (it != dist.end() && it->second == dist.at(cur) - 1) {
                            cur = nb;
                            back.push_back(cur);
                            break;
                        }
                    }
                }
                auto out_set = vset_union(comp_hosted, vset_normalize(back));
                return {out_set, std::nullopt};
            }
            throw std::logic_error("find_small_pw_subgraph: wide J without wide component");
        }

        auto cut_inner = vset_intersection(refined.sep.left, refined.sep.right);
        auto y_set = vset_union(vset_normalize(x_set), cut_inner);
        std::vector<int> marked_local;
        for (int v : y_set)
            if (jsub.old_to_new[v] >= 0) marked_local.push_back(jsub.old_to_new[v]);
        auto pd = width_witness(jsub.graph, t - 1);
        TSeparation jsep_local = marked_separation(jsub.graph, pd, marked_local, t - 1);
        TSeparation jsep = map_tseparation(jsep_local, jsub.new_to_old);
        if (mpz_class(jsep.sep.left.size()) < r)
            throw std::logic_error("find_small_pw_subgraph: link-up separation too small");

        auto interior = vset_difference(jsep.sep.left, jsep.sep.right);
        std::vector<int> all(g.vertex_count());
        for (int i = 0; i < g.vertex_count(); ++i) all[i] = i;
        TSeparation out{Separation::make(jsep.sep.left, vset_difference(all, interior)),
                        jsep.decomposition, t - 1};
        if (!validate_tseparation(g, out))
            throw std::logic_error("find_small_pw_subgraph: link-up separation invalid");
        return {std::nullopt, std::move(out)};
    }

    SmallPwOutcome case_high_degree(const Graph& g, int w, int t, const mpz_class& r,
                                    const ConstantsRaw& raw, int d_int, int x) {
        (void)d_int;
        const mpz_class r_next[3] = {raw.r1.value, raw.r2.value, raw.r3.value};
        std::vector<int> x_cur{x};

        for (int step = 0; step < 3; ++step) {
            std::vector<int> keep;
            auto xs = vset_normalize(x_cur);
            for (int v = 0; v < g.vertex_count(); ++v)
                if (!vset_contains(xs, v)) keep.push_back(v);
            auto rsub = induced_subgraph(g, keep);

            // components of G - X that contain a neighbor of x
            std::vector<std::vector<int>> nbr_comps;
            for (const auto& comp : connected_components(rsub.graph)) {
                auto hosted = map_vertices(comp, rsub.new_to_old);
                bool touches = false;
                for (int nb : g.neighbors(x))
                    if (vset_contains(hosted, nb)) {
                        touches = true;
                        break;
                    }
                if (touches) nbr_comps.push_back(hosted);
            }

            const std::vector<int>* wide = nullptr;
            for (const auto& comp : nbr_comps) {
                auto csub = induced_subgraph(g, comp);
                if (pw_at_least(csub.graph, t)) {
                    wide = &comp;
                    break;
                }
            }

            if (!wide) {
                // every component seen from x is narrow: split off a big separation
                std::vector<int> h_set;
                for (const auto& comp : nbr_comps) h_set = vset_union(h_set, comp);
                mpz_class need = (r + t - 1) * mpz_class(xs.size()) + (r + t) * (2 * t) + r;
                if (mpz_class(h_set.size()) < need)
                    throw std::logic_error("find_small_pw_subgraph: neighborhood size bound violated");
                auto hsub = induced_subgraph(g, h_set);
                auto pd = width_witness(hsub.graph, t - 1);
                TSeparation hsep_local = marked_separation(hsub.graph, pd, {}, t - 1);
                TSeparation hsep = map_tseparation(hsep_local, hsub.new_to_old);
                return separation_or_linkup(g, w, t, r, xs, x, hsep);
            }

            // recurse on the wide component with the neighbor of x as root
            auto csub = induced_subgraph(g, *wide);
            int root_local = -1;
            for (int nb : g.neighbors(x))
                if (csub.old_to_new[nb] >= 0) {
                    root_local = csub.old_to_new[nb];
                    break;
                }
            SmallPwOutcome inner = run(csub.graph, root_local, t - 1, r_next[step]);
            if (inner.separation) {
                // extend to a separation of G - X and hand to the link-up step
                TSeparation hosted = map_tseparation(*inner.separation, csub.new_to_old);
                auto others = vset_difference(keep, *wide);
                hosted.sep.right = vset_union(hosted.sep.right, others);
                hosted.sep.order =
                    static_cast<int>(vset_intersection(hosted.sep.left, hosted.sep.right).size());
                hosted.t = t - 1;  // a (t-2)-separation is also a (t-1)-separation
                return separation_or_linkup(g, w, t, r, xs, x, hosted);
            }
            auto h_hosted = map_vertices(*inner.subgraph, csub.new_to_old);
            x_cur = vset_union(vset_normalize(x_cur), h_hosted);
        }

        // X_3 assembled: pathwidth >= t by the apex composition
        auto x3sub = induced_subgraph(g, x_cur);
        if (!pw_at_least(x3sub.graph, t))
            throw std::logic_error("find_small_pw_subgraph: composed subgraph too narrow");
        auto dist = bfs_distances(g, w);
        int best = -1;
        for (int v : x_cur) {
            auto it = dist.find(v);
            if (it == dist.end()) continue;
            if (best < 0 || it->second < dist.at(best)) best = v;
        }
        std::vector<int> back{best};
        int cur = best;
        while (cur != w) {
            for (int nb : g.neighbors(cur)) {
                auto it = dist.find(nb);
                if (it != dist.end() && it->second == dist.at(cur) - 1) {
                    cur = nb;
                    back.push_back(cur);
                    break;
                }
            }
        }
        return {vset_union(x_cur, vset_normalize(back)), std::nullopt};
    }
};

}  // namespace

SmallPwOutcome find_small_pw_subgraph(const Graph& g, int w, int t, int r,
                                      const SmallPwOptions& opts) {
    if (t < 0 || r < 0) throw std::invalid_argument("find_small_pw_subgraph: negative parameter");
    SmallPw solver{opts};
    return solver.run(g, w, t, mpz_class(r));
}

std::vector<int> minimal_pw_subgraph(const Graph& g, int t, int cap) {
    std::vector<int> current;
    for (const auto& comp : connected_components(g)) {
        auto sub = induced_subgraph(g, comp);
        if (!pathwidth_at_most(sub.graph, t - 1, cap)
                 .at_most) {
            current = comp;
            break;
        }
    }
    if (current.empty())
        throw std::invalid_argument("minimal_pw_subgraph: pathwidth of input below t");

    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (int v : current) {
            auto candidate = vset_difference(current, {v});
            if (candidate.empty()) continue;
            auto sub = induced_subgraph(g, candidate);
            if (!is_connected(sub.graph)) continue;
            if (pathwidth_at_most(sub.graph, t - 1, cap)
                    .at_most)
                continue;
            current = candidate;
            shrunk = true;
            break;
        }
    }
    return current;
}

// ---------------------------------------------------------------------------
// lifts across the folio-preserving reduction

namespace {

// Partitions `part` (replacement-local ids, inducing a subgraph whose every
// component holds an anchor) into |anchors| connected parts, one anchor each.
std::vector<std::vector<int>> split_connected(const Graph& g, const std::vector<int>& part,
                                              const std::vector<int>& anchors) {
    std::map<int, int> owner;
    std::deque<int> queue;
    for (size_t i = 0; i < anchors.size(); ++i) {
        owner[anchors[i]] = static_cast<int>(i);
        queue.push_back(anchors[i]);
    }
    auto inside = vset_normalize(part);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int nb : g.neighbors(v)) {
            if (!vset_contains(inside, nb) || owner.count(nb)) continue;
            owner[nb] = owner[v];
            queue.push_back(nb);
        }
    }
    std::vector<std::vector<int>> parts(anchors.size());
    for (int v : inside) {
        auto it = owner.find(v);
        if (it == owner.end())
            throw std::logic_error("split_connected: vertex unreachable from anchors");
        parts[it->second].push_back(v);
    }
    for (auto& p : parts) p = vset_normalize(std::move(p));
    return parts;
}

struct ReducedView {
    std::vector<int> cut_reduced;       // reduced ids of the cut, in root order
    std::vector<int> k1_vertices;       // reduced ids of the replacement (cut + interior)
    std::vector<int> reduced_to_repl;   // reduced id -> replacement-local id, -1 elsewhere
};

ReducedView reduced_view(const ReductionOutcome& red) {
    ReducedView view;
    view.reduced_to_repl.assign(red.reduced.vertex_count(), -1);
    for (int v = 0; v < red.replacement.graph.vertex_count(); ++v)
        view.reduced_to_repl[red.replacement_to_reduced[v]] = v;
    for (int x : red.cut) view.cut_reduced.push_back(red.g_to_reduced[x]);
    std::vector<int> k1;
    for (int v = 0; v < red.replacement.graph.vertex_count(); ++v)
        k1.push_back(red.replacement_to_reduced[v]);
    view.k1_vertices = vset_normalize(std::move(k1));
    return view;
}

}  // namespace

Packing lift_packing(const Graph& g, const Graph& tree, const ReductionOutcome& red,
                     const Packing& reduced_packing, const FolioOptions& opts) {
    Family tf = Family::make({tree});
    if (!verify_packing(tf, red.reduced, reduced_packing))
        throw std::invalid_argument("lift_packing: reduced packing does not verify");
    auto view = reduced_view(red);

    Packing out;
    struct Touched {
        const MinorModel* model;
        std::vector<int> cut_hits;  // reduced ids
    };
    std::vector<Touched> touched;
    for (const auto& [member, model] : reduced_packing.models) {
        auto verts = model.vertex_set();
        auto inside = vset_intersection(verts, view.k1_vertices);
        if (inside.empty()) {
            MinorModel lifted;
            for (const auto& s : model.branch_sets)
                lifted.branch_sets.push_back(map_vertices(s, red.reduced_to_g));
            out.models.emplace_back(member, std::move(lifted));
        } else {
            auto cut_sorted = vset_normalize(view.cut_reduced);
            touched.push_back({&model, vset_intersection(verts, cut_sorted)});
        }
    }
    if (touched.empty()) return out;

    // H* construction per the folio argument: pieces of touched branch sets
    // inside the replacement, anchored at their cut vertices
    struct Piece {
        int model_idx;
        int pattern_vertex;
        int piece_idx;
        std::vector<int> repl_vertices;  // replacement-local
        int anchor_root_pos = -1;        // position in R, -1 for interior pieces
    };
    std::vector<Piece> pieces;
    std::vector<std::vector<std::vector<int>>> exterior(touched.size());

    auto root_pos_of_repl = [&](int repl_vertex) {
        for (size_t i = 0; i < red.replacement.roots.size(); ++i)
            if (red.replacement.roots[i] == repl_vertex) return static_cast<int>(i);
        return -1;
    };

    for (size_t ti = 0; ti < touched.size(); ++ti) {
        const MinorModel& model = *touched[ti].model;
        exterior[ti].resize(model.branch_sets.size());
        for (int u = 0; u < static_cast<int>(model.branch_sets.size()); ++u) {
            const auto& s = model.branch_sets[u];
            auto in_k1 = vset_intersection(s, view.k1_vertices);
            exterior[ti][u] = vset_difference(s, view.k1_vertices);
            if (in_k1.empty()) continue;
            std::vector<int> repl_set;
            for (int v : in_k1) repl_set.push_back(view.reduced_to_repl[v]);
            repl_set = vset_normalize(std::move(repl_set));
            std::vector<int> anchors;
            for (int v : vset_intersection(s, vset_normalize(view.cut_reduced)))
                anchors.push_back(view.reduced_to_repl[v]);
            anchors = vset_normalize(std::move(anchors));
            if (anchors.empty()) {
                pieces.push_back({static_cast<int>(ti), u, 0, repl_set, -1});
            } else {
                auto parts = split_connected(red.replacement.graph, repl_set, anchors);
                for (size_t j = 0; j < parts.size(); ++j)
                    pieces.push_back({static_cast<int>(ti), u, static_cast<int>(j), parts[j],
                                      root_pos_of_repl(anchors[j])});
            }
        }
    }
    if (static_cast<int>(pieces.size()) > red.certificate.q)
        throw std::logic_error("lift_packing: H* exceeds the folio bound");

    // H* edges: replacement edges between distinct pieces
    std::vector<std::pair<int, int>> hstar_edges;
    for (size_t a = 0; a < pieces.size(); ++a)
        for (size_t b = a + 1; b < pieces.size(); ++b) {
            bool adj = false;
            for (int u : pieces[a].repl_vertices) {
                for (int v : pieces[b].repl_vertices)
                    if (red.replacement.graph.has_edge(u, v)) {
                        adj = true;
                        break;
                    }
                if (adj) break;
            }
            if (adj) hstar_edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    Graph hstar(static_cast<int>(pieces.size()), hstar_edges);

    // roots: ordered by cut position
    std::vector<std::pair<int, int>> anchored;  // (root position, piece index)
    for (size_t i = 0; i < pieces.size(); ++i)
        if (pieces[i].anchor_root_pos >= 0)
            anchored.emplace_back(pieces[i].anchor_root_pos, static_cast<int>(i));
    std::sort(anchored.begin(), anchored.end());
    std::vector<int> hstar_roots, host_roots;
    for (auto [pos, piece] : anchored) {
        hstar_roots.push_back(piece);
        host_roots.push_back(red.g1.roots[pos]);
    }

    FindModelOptions search = opts.search;
    auto model_in_g1 =
        find_rooted_model({hstar, hstar_roots}, {red.g1.graph, host_roots}, search);
    if (!model_in_g1)
        throw std::logic_error("lift_packing: folio-guaranteed rooted model not found");

    // reassemble the touched models in g ids
    std::vector<MinorModel> rebuilt(touched.size());
    for (size_t ti = 0; ti < touched.size(); ++ti)
        rebuilt[ti].branch_sets.assign(touched[ti].model->branch_sets.size(), {});
    for (size_t pi = 0; pi < pieces.size(); ++pi) {
        const Piece& piece = pieces[pi];
        auto g_part = map_vertices(model_in_g1->branch_sets[pi], red.g1_to_g);
        auto& target = rebuilt[piece.model_idx].branch_sets[piece.pattern_vertex];
        target = vset_union(target, g_part);
    }
    for (size_t ti = 0; ti < touched.size(); ++ti)
        for (int u = 0; u < static_cast<int>(rebuilt[ti].branch_sets.size()); ++u) {
            auto ext = map_vertices(exterior[ti][u], red.reduced_to_g);
            rebuilt[ti].branch_sets[u] = vset_union(rebuilt[ti].branch_sets[u], ext);
        }
    for (auto& m : rebuilt) {
        if (!verify_model(tree, g, m))
            throw std::logic_error("lift_packing: rebuilt model failed to verify");
        out.models.emplace_back(0, std::move(m));
    }
    if (!verify_packing(tf, g, out))
        throw std::logic_error("lift_packing: lifted packing failed to verify");
    return out;
}

Transversal lift_transversal(const Graph& g, const Graph& tree, const ReductionOutcome& red,
                             const Transversal& reduced_tv, const FolioOptions& opts) {
    Family tf = Family::make({tree});
    FolioOptions fopts = opts;
    fopts.max_pattern_size = std::max(fopts.max_pattern_size, red.certificate.q);
    if (!verify_transversal(tf, red.reduced, reduced_tv, fopts.search))
        throw std::invalid_argument("lift_transversal: reduced transversal does not verify");
    auto view = reduced_view(red);
    int t = static_cast<int>(red.cut.size());
    int q = red.certificate.q;

    auto cut_sorted = vset_normalize(view.cut_reduced);
    std::vector<int> j = vset_normalize(reduced_tv.vertices);
    auto j1 = vset_intersection(j, view.k1_vertices);
    if (static_cast<int>(j1.size()) > t) {
        j = vset_union(vset_difference(j, j1), cut_sorted);
        Transversal renorm{j};
        if (!verify_transversal(tf, red.reduced, renorm, fopts.search))
            throw std::logic_error("lift_transversal: cut normalization broke the transversal");
        j1 = vset_intersection(j, view.k1_vertices);
    }

    // deleted root positions, in R order
    std::vector<int> deleted_positions;
    for (int pos = 0; pos < t; ++pos)
        if (vset_contains(j1, view.cut_reduced[pos])) deleted_positions.push_back(pos);
    int ysize = static_cast<int>(j1.size()) - static_cast<int>(deleted_positions.size());

    // target folio of (replacement - J1, kept roots)
    std::vector<int> removed_repl;
    for (int v : j1) removed_repl.push_back(view.reduced_to_repl[v]);
    removed_repl = vset_normalize(std::move(removed_repl));
    std::vector<int> kept_repl;
    for (int v = 0; v < red.replacement.graph.vertex_count(); ++v)
        if (!vset_contains(removed_repl, v)) kept_repl.push_back(v);
    auto repl_sub = induced_subgraph(red.replacement.graph, kept_repl);
    std::vector<int> repl_roots;
    for (int pos = 0; pos < t; ++pos)
        if (!vset_contains(vset_normalize(deleted_positions), pos))
            repl_roots.push_back(repl_sub.old_to_new[red.replacement.roots[pos]]);
    Folio target = q_folio({repl_sub.graph, repl_roots}, q, fopts);

    // search for I1 in G1 with the same folio after deletion
    std::vector<int> g1_roots_sorted = vset_normalize(red.g1.roots);
    std::vector<int> g1_non_roots;
    for (int v = 0; v < red.g1.graph.vertex_count(); ++v)
        if (!vset_contains(g1_roots_sorted, v)) g1_non_roots.push_back(v);

    std::vector<int> deleted_g1_roots;
    for (int pos : deleted_positions) deleted_g1_roots.push_back(red.g1.roots[pos]);

    std::vector<int> pick(ysize);
    std::optional<std::vector<int>> found;
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (found) return;
        if (depth == ysize) {
            std::vector<int> removed = deleted_g1_roots;
            for (int idx : pick) removed.push_back(g1_non_roots[idx]);
            removed = vset_normalize(std::move(removed));
            std::vector<int> keep;
            for (int v = 0; v < red.g1.graph.vertex_count(); ++v)
                if (!vset_contains(removed, v)) keep.push_back(v);
            auto sub = induced_subgraph(red.g1.graph, keep);
            std::vector<int> roots;
            for (int pos = 0; pos < t; ++pos)
                if (!vset_contains(vset_normalize(deleted_positions), pos))
                    roots.push_back(sub.old_to_new[red.g1.roots[pos]]);
            Folio f = q_folio({sub.graph, roots}, q, fopts);
            if (f == target) found = removed;
            return;
        }
        for (int idx = start; idx < static_cast<int>(g1_non_roots.size()); ++idx) {
            pick[depth] = idx;
            rec(idx + 1, depth + 1);
            if (found) return;
        }
    };
    rec(0, 0);
    if (!found) throw std::logic_error("lift_transversal: folio-guaranteed deletion set missing");

    std::vector<int> lifted;
    for (int v : vset_difference(j, j1)) lifted.push_back(red.reduced_to_g[v]);
    for (int v : *found) lifted.push_back(red.g1_to_g[v]);
    Transversal out{vset_normalize(std::move(lifted))};
    if (!verify_transversal(tf, g, out, fopts.search))
        throw std::logic_error("lift_transversal: lifted transversal failed to verify");
    return out;
}

// ---------------------------------------------------------------------------
// duality driver

namespace {

struct TreeDualityResult {
    Packing packing;       // models of the tree (member index 0)
    std::vector<int> tv;   // transversal vertices
    int max_harvest = 0;
};

struct TreeDriver {
    const Graph& tree;
    int t;
    bool faithful;
    const DualityOptions& opts;
    Family tree_fam;

    TreeDualityResult run(const Graph& g) {
        TreeDualityResult res;
        for (const auto& comp : connected_components(g)) {
            auto sub = induced_subgraph(g, comp);
            auto part = run_connected(sub.graph);
            for (auto& [m, model] : part.packing.models)
                res.packing.models.emplace_back(m, map_model(model, sub.new_to_old));
            for (int v : part.tv) res.tv.push_back(sub.new_to_old[v]);
            res.max_harvest = std::max(res.max_harvest, part.max_harvest);
        }
        res.tv = vset_normalize(std::move(res.tv));
        return res;
    }

    TreeDualityResult run_connected(const Graph& g) {
        TreeDualityResult res;
        if (g.vertex_count() == 0) return res;
        auto dec =
            pathwidth_at_most(g, t - 2, opts.small_pw.pathwidth_cap);
        if (dec.at_most) {
            auto [nu, packing] = nu_exact(tree_fam, g, opts.oracle);
            auto outcome =
                packing_or_transversal_bounded_pw(tree_fam, g, dec.witness, nu + 1, opts.oracle);
            if (!outcome.transversal)
                throw std::logic_error("ep_duality: packing of size nu+1 is impossible");
            res.packing = std::move(packing);
            res.tv = outcome.transversal->vertices;
            return res;
        }

        if (faithful) {
            SmallPwOptions sp = opts.small_pw;
            auto outcome = find_small_pw_subgraph(g, 0, t - 1, opts.faithful_r, sp);
            if (outcome.subgraph) return harvest(g, *outcome.subgraph);
            TSeparation refined =
                refine_separation(g, *outcome.separation, {}, opts.faithful_r);
            auto g1sub = induced_subgraph(g, refined.sep.left);
            if (find_model(tree, g1sub.graph, opts.oracle.search))
                return harvest(g, refined.sep.left);
            auto red = reduce_separation(g, refined.sep, tree, opts.reduce);
            if (!red)
                throw BudgetExceededError(
                    "ep_duality: reduction found no smaller folio-equivalent graph");
            TreeDualityResult inner = run(red->reduced);
            Packing inner_packing = inner.packing;
            Transversal inner_tv{vset_normalize(inner.tv)};
            Packing lifted_p = lift_packing(g, tree, *red, inner_packing, opts.reduce.folio);
            Transversal lifted_t =
                lift_transversal(g, tree, *red, inner_tv, opts.reduce.folio);
            TreeDualityResult res2;
            res2.packing = std::move(lifted_p);
            res2.tv = lifted_t.vertices;
            res2.max_harvest = inner.max_harvest;
            return res2;
        }

        auto s = minimal_pw_subgraph(g, t - 1, opts.small_pw.pathwidth_cap);
        return harvest(g, s);
    }

    TreeDualityResult harvest(const Graph& g, const std::vector<int>& s) {
        auto ssub = induced_subgraph(g, s);
        auto model = find_model(tree, ssub.graph, opts.oracle.search);
        if (!model)
            throw std::logic_error("ep_duality: harvested subgraph lost its tree minor");
        std::vector<int> keep;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!vset_contains(s, v)) keep.push_back(v);
        auto rest = induced_subgraph(g, keep);
        TreeDualityResult res = run(rest.graph);
        Packing mapped;
        mapped.models.emplace_back(0, map_model(*model, ssub.new_to_old));
        for (auto& [m, mo] : res.packing.models)
            mapped.models.emplace_back(m, map_model(mo, rest.new_to_old));
        std::vector<int> tv = s;
        for (int v : res.tv) tv.push_back(rest.new_to_old[v]);
        TreeDualityResult out;
        out.packing = std::move(mapped);
        out.tv = vset_normalize(std::move(tv));
        out.max_harvest = std::max(static_cast<int>(s.size()), res.max_harvest);
        return out;
    }
};

DualityCertificate run_duality(const Family& fam, const Graph& g, bool faithful,
                               const DualityOptions& opts) {
    const Graph& forest = fam.members[fam.forest_index];
    Graph tree = tree_completion(forest);
    int t = tree.vertex_count();

    mpz_class faithful_constant;
    if (faithful) {
        // c' = max{1, 2(t-1), r, f(t-1, r)}; overflow aborts the faithful run
        auto f = f_value(t - 1, mpz_class(opts.faithful_r), opts.small_pw.constants.max_bits);
        if (f.huge)
            throw OverflowError("ep_duality: faithful-mode constant exceeds the bit budget");
        faithful_constant = std::max(mpz_class(1), mpz_class(2 * (t - 1)));
        faithful_constant = std::max(faithful_constant, mpz_class(opts.faithful_r));
        faithful_constant = std::max(faithful_constant, f.value);
    }

    TreeDriver driver{tree, t, faithful, opts, Family::make({tree})};
    TreeDualityResult phase1 = driver.run(g);

    // family layer on the tree-free remainder
    std::vector<int> rest_to_g;
    {
        auto tvset = vset_normalize(phase1.tv);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!vset_contains(tvset, v)) rest_to_g.push_back(v);
    }
    auto rest = induced_subgraph(g, rest_to_g);

    // members may be disconnected, so the remainder is handled as a whole:
    // a per-component pass would miss models spanning several components
    Packing phase2_packing;
    std::vector<int> phase2_tv;
    if (rest.graph.vertex_count() > 0) {
        auto dec = pathwidth_at_most(rest.graph, t - 2, opts.small_pw.pathwidth_cap);
        if (!dec.at_most)
            throw std::logic_error("ep_duality: tree-free remainder exceeds pathwidth t-2");
        auto [nu2, pk2] = nu_exact(fam, rest.graph, opts.oracle);
        auto outcome =
            packing_or_transversal_bounded_pw(fam, rest.graph, dec.witness, nu2 + 1, opts.oracle);
        if (!outcome.transversal)
            throw std::logic_error("ep_duality: packing of size nu+1 is impossible (phase 2)");
        for (auto& [m, model] : pk2.models)
            phase2_packing.models.emplace_back(m, map_model(model, rest.new_to_old));
        for (int v : outcome.transversal->vertices) phase2_tv.push_back(rest.new_to_old[v]);
    }

    // phase-1 tree models double as models of the forest member
    Packing phase1_packing;
    for (auto& [m, model] : phase1.packing.models)
        phase1_packing.models.emplace_back(fam.forest_index, model);

    DualityCertificate cert;
    cert.mode = faithful ? DualityMode::Faithful : DualityMode::Practical;
    cert.packing =
        phase1_packing.size() >= static_cast<int>(phase2_packing.models.size())
            ? std::move(phase1_packing)
            : std::move(phase2_packing);
    cert.transversal.vertices = vset_normalize(vset_union(phase1.tv, phase2_tv));

    if (!faithful) {
        // harvested sets are blunt; drop whatever the transversal can spare
        auto current = cert.transversal.vertices;
        for (int v : cert.transversal.vertices) {
            auto candidate = vset_difference(current, {v});
            if (verify_transversal(fam, g, Transversal{candidate}, opts.oracle.search))
                current = candidate;
        }
        cert.transversal.vertices = current;
    }

    mpz_class family_part = mpz_class(2) * fam.q * fam.r * t;
    mpz_class constant = faithful ? faithful_constant + family_part
                                  : mpz_class(std::max(1, phase1.max_harvest)) + family_part;
    cert.constant_used = constant.get_str();
    cert.ratio = static_cast<double>(cert.transversal.size()) /
                 static_cast<double>(std::max(1, cert.packing.size()));

    if (faithful) {
        mpz_class bound = constant * std::max(1, cert.packing.size());
        if (mpz_class(cert.transversal.size()) > bound)
            throw std::logic_error("ep_duality: faithful ratio bound violated");
    }
    return cert;
}

}  // namespace

DualityCertificate ep_duality(const Family& fam, const Graph& g, DualityMode mode,
                              const DualityOptions& opts) {
    if (fam.forest_index < 0)
        throw std::invalid_argument("ep_duality: family must contain a forest");
    if (mode == DualityMode::Practical) return run_duality(fam, g, false, opts);
    try {
        return run_duality(fam, g, true, opts);
    } catch (const CapExceededError&) {
    } catch (const BudgetExceededError&) {
    } catch (const OverflowError&) {
    }
    DualityCertificate cert = run_duality(fam, g, false, opts);
    cert.downgraded = true;
    return cert;
}

bool verify_certificate(const Family& fam, const Graph& g, const DualityCertificate& cert,
                        const FindModelOptions& opts) {
    if (!verify_packing(fam, g, cert.packing)) return false;
    if (!verify_transversal(fam, g, cert.transversal, opts)) return false;
    double expected = static_cast<double>(cert.transversal.size()) /
                      static_cast<double>(std::max(1, cert.packing.size()));
    if (cert.ratio != expected) return false;
    mpz_class constant;
    try {
        constant = mpz_class(cert.constant_used);
    } catch (const std::exception&) {
        return false;
    }
    if (cert.mode == DualityMode::Faithful) {
        mpz_class bound = constant * std::max(1, cert.packing.size());
        if (mpz_class(cert.transversal.size()) > bound) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// FPT pathwidth deletion

namespace {

std::optional<Transversal> fpt_connected(const Graph& g, int t, int k, const FptOptions& opts);

std::optional<Transversal> fpt_any(const Graph& g, int t, int k, const FptOptions& opts) {
    auto comps = connected_components(g);
    if (comps.size() <= 1) {
        if (g.vertex_count() == 0) return Transversal{};
        return fpt_connected(g, t, k, opts);
    }
    std::vector<int> acc;
    int budget = k;
    for (const auto& comp : comps) {
        auto sub = induced_subgraph(g, comp);
        std::optional<Transversal> found;
        for (int l = 0; l <= budget && !found; ++l)
            found = fpt_any(sub.graph, t, l, opts);
        if (!found) return std::nullopt;
        for (int v : found->vertices) acc.push_back(sub.new_to_old[v]);
        budget -= found->size();
    }
    return Transversal{vset_normalize(std::move(acc))};
}

std::optional<Transversal> fpt_connected(const Graph& g, int t, int k, const FptOptions& opts) {
    int cap = opts.pathwidth_cap;
    if (pathwidth_at_most(g, t - 1, cap).at_most) return Transversal{};
    if (k == 0) return std::nullopt;

    std::vector<int> branch_set;
    if (opts.mode == DualityMode::Faithful) {
        auto outcome = find_small_pw_subgraph(g, 0, t, opts.faithful_r, opts.small_pw);
        if (outcome.subgraph)
            branch_set = *outcome.subgraph;
        else
            branch_set = minimal_pw_subgraph(g, t, opts.pathwidth_cap);
    } else {
        branch_set = minimal_pw_subgraph(g, t, opts.pathwidth_cap);
    }

    int m = static_cast<int>(branch_set.size());
    for (int size = 1; size <= std::min(k, m); ++size) {
        std::vector<int> idx(size);
        std::function<std::optional<Transversal>(int, int)> rec =
            [&](int start, int depth) -> std::optional<Transversal> {
            if (depth == size) {
                std::vector<int> removed;
                for (int i : idx) removed.push_back(branch_set[i]);
                removed = vset_normalize(std::move(removed));
                std::vector<int> keep;
                for (int v = 0; v < g.vertex_count(); ++v)
                    if (!vset_contains(removed, v)) keep.push_back(v);
                auto sub = induced_subgraph(g, keep);
                auto inner = fpt_any(sub.graph, t, k - size, opts);
                if (!inner) return std::nullopt;
                std::vector<int> total = removed;
                for (int v : inner->vertices) total.push_back(sub.new_to_old[v]);
                return Transversal{vset_normalize(std::move(total))};
            }
            for (int i = start; i < m; ++i) {
                idx[depth] = i;
                if (auto r = rec(i + 1, depth + 1)) return r;
            }
            return std::nullopt;
        };
        if (auto r = rec(0, 0)) return r;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Transversal> fpt_pw_deletion(const Graph& g, int t, int k, const FptOptions& opts) {
    if (t < 1) throw std::invalid_argument("fpt_pw_deletion: t must be >= 1");
    if (k < 0) throw std::invalid_argument("fpt_pw_deletion: k must be >= 0");
    return fpt_any(g, t, k, opts);
}

}  // namespace minorpack
