#pragma once

#include <map>
#include <utility>
#include <vector>

namespace minorpack {

// Simple undirected graph over dense vertex ids 0..n-1. Adjacency is kept as
// sorted neighbor lists so equality and hashing are canonical. Instances are
// immutable after construction; operations return fresh graphs.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }
    bool has_edge(int u, int v) const;
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    std::vector<std::pair<int, int>> edges() const;  // sorted, u < v

    bool operator==(const Graph&) const = default;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> adj_;
};

// Graph plus an ordered sequence of distinct root vertices. Root order is
// significant: isomorphism must map the i-th root to the i-th root.
struct RootedGraph {
    Graph graph;
    std::vector<int> roots;
};

void validate_rooted(const RootedGraph& rg);  // throws std::invalid_argument

// Separation (G1, G2): left ∪ right = V(G) and no edge joins left∖right to
// right∖left. Overlap or containment of the two sides is allowed.
struct Separation {
    std::vector<int> left;   // sorted
    std::vector<int> right;  // sorted
    int order = 0;           // |left ∩ right|

    static Separation make(std::vector<int> left, std::vector<int> right);
};

struct InducedSubgraph {
    Graph graph;
    std::vector<int> new_to_old;  // order-preserving
    std::vector<int> old_to_new;  // -1 for dropped vertices
};

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& s);
Graph delete_vertices(const Graph& g, const std::vector<int>& removed);

Graph contract_edge(const Graph& g, int u, int v);
Graph contract_edge(const Graph& g, int u, int v, std::vector<int>& old_to_new);

std::vector<std::vector<int>> connected_components(const Graph& g);
bool validate_separation(const Graph& g, const Separation& sep);

// Shortest-path edge counts from w; unreachable vertices are absent.
std::map<int, int> bfs_distances(const Graph& g, int w);

bool is_connected(const Graph& g);
bool is_forest(const Graph& g);
bool is_tree(const Graph& g);
Graph disjoint_union(const std::vector<Graph>& parts);

// Sorted-vector set helpers shared across the library.
std::vector<int> vset_union(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> vset_intersection(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> vset_difference(const std::vector<int>& a, const std::vector<int>& b);
bool vset_contains(const std::vector<int>& a, int v);
std::vector<int> vset_normalize(std::vector<int> a);  // sort + unique

}  // namespace minorpack
