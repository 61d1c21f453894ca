#include "minorpack/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

namespace minorpack {

namespace {

void check_vertex(int v, int n, const char* what) {
    if (v < 0 || v >= n)
        throw std::invalid_argument(std::string(what) + ": vertex id " + std::to_string(v) +
                                    " out of range [0," + std::to_string(n) + ")");
}

}  // namespace

Graph::Graph(int n) : n_(n), adj_(n) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        check_vertex(u, n, "Graph");
        check_vertex(v, n, "Graph");
        if (u == v) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(u));
        auto e = std::minmax(u, v);
        if (!seen.insert({e.first, e.second}).second)
            throw std::invalid_argument("Graph: duplicate edge " + std::to_string(e.first) + "-" +
                                        std::to_string(e.second));
    }
    for (auto [u, v] : seen) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    m_ = static_cast<int>(seen.size());
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u, n_, "has_edge");
    check_vertex(v, n_, "has_edge");
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

void validate_rooted(const RootedGraph& rg) {
    std::vector<bool> seen(rg.graph.vertex_count(), false);
    for (int r : rg.roots) {
        check_vertex(r, rg.graph.vertex_count(), "RootedGraph");
        if (seen[r]) throw std::invalid_argument("RootedGraph: duplicate root " + std::to_string(r));
        seen[r] = true;
    }
}

Separation Separation::make(std::vector<int> left, std::vector<int> right) {
    Separation s;
    s.left = vset_normalize(std::move(left));
    s.right = vset_normalize(std::move(right));
    s.order = static_cast<int>(vset_intersection(s.left, s.right).size());
    return s;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& s) {
    InducedSubgraph out;
    out.new_to_old = vset_normalize(s);
    for (int v : out.new_to_old) check_vertex(v, g.vertex_count(), "induced_subgraph");
    out.old_to_new.assign(g.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(out.new_to_old.size()); ++i)
        out.old_to_new[out.new_to_old[i]] = i;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < static_cast<int>(out.new_to_old.size()); ++i)
        for (int w : g.neighbors(out.new_to_old[i])) {
            int j = out.old_to_new[w];
            if (j > i) edges.emplace_back(i, j);
        }
    out.graph = Graph(static_cast<int>(out.new_to_old.size()), edges);
    return out;
}

Graph delete_vertices(const Graph& g, const std::vector<int>& removed) {
    std::vector<int> keep;
    auto rm = vset_normalize(removed);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!vset_contains(rm, v)) keep.push_back(v);
    return induced_subgraph(g, keep).graph;
}

Graph contract_edge(const Graph& g, int u, int v, std::vector<int>& old_to_new) {
    if (!g.has_edge(u, v)) throw std::invalid_argument("contract_edge: not an edge");
    int keep = std::min(u, v), drop = std::max(u, v);
    old_to_new.assign(g.vertex_count(), -1);
    for (int w = 0; w < g.vertex_count(); ++w)
        old_to_new[w] = w < drop ? w : w - 1;
    old_to_new[drop] = keep;  // merged vertex keeps the smaller id
    std::set<std::pair<int, int>> edges;
    for (auto [a, b] : g.edges()) {
        int x = old_to_new[a], y = old_to_new[b];
        if (x == y) continue;  // loop created by the contraction: dropped
        edges.insert(std::minmax(x, y));
    }
    return Graph(g.vertex_count() - 1, {edges.begin(), edges.end()});
}

Graph contract_edge(const Graph& g, int u, int v) {
    std::vector<int> unused;
    return contract_edge(g, u, v, unused);
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(g.vertex_count(), false);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::deque<int> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            comp.push_back(x);
            for (int y : g.neighbors(x))
                if (!seen[y]) {
                    seen[y] = true;
                    queue.push_back(y);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool validate_separation(const Graph& g, const Separation& sep) {
    int n = g.vertex_count();
    for (int v : sep.left)
        if (v < 0 || v >= n) return false;
    for (int v : sep.right)
        if (v < 0 || v >= n) return false;
    if (!std::is_sorted(sep.left.begin(), sep.left.end()) ||
        std::adjacent_find(sep.left.begin(), sep.left.end()) != sep.left.end())
        return false;
    if (!std::is_sorted(sep.right.begin(), sep.right.end()) ||
        std::adjacent_find(sep.right.begin(), sep.right.end()) != sep.right.end())
        return false;
    if (static_cast<int>(vset_union(sep.left, sep.right).size()) != n) return false;
    auto cut = vset_intersection(sep.left, sep.right);
    if (sep.order != static_cast<int>(cut.size())) return false;
    auto only_left = vset_difference(sep.left, sep.right);
    auto only_right = vset_difference(sep.right, sep.left);
    for (int u : only_left)
        for (int w : g.neighbors(u))
            if (vset_contains(only_right, w)) return false;
    return true;
}

std::map<int, int> bfs_distances(const Graph& g, int w) {
    check_vertex(w, g.vertex_count(), "bfs_distances");
    std::map<int, int> dist;
    std::deque<int> queue{w};
    dist[w] = 0;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int y : g.neighbors(x))
            if (!dist.count(y)) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
    }
    return dist;
}

bool is_connected(const Graph& g) {
    return connected_components(g).size() <= 1;
}

bool is_forest(const Graph& g) {
    auto comps = connected_components(g);
    return g.edge_count() == g.vertex_count() - static_cast<int>(comps.size());
}

bool is_tree(const Graph& g) {
    return g.vertex_count() >= 1 && is_connected(g) && g.edge_count() == g.vertex_count() - 1;
}

Graph disjoint_union(const std::vector<Graph>& parts) {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    for (const auto& p : parts) {
        for (auto [u, v] : p.edges()) edges.emplace_back(u + n, v + n);
        n += p.vertex_count();
    }
    return Graph(n, edges);
}

std::vector<int> vset_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> vset_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> vset_difference(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool vset_contains(const std::vector<int>& a, int v) {
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<int> vset_normalize(std::vector<int> a) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

}  // namespace minorpack
