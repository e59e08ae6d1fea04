#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rsimple/nat.hpp"

namespace rsimple {

using Arc = std::pair<int, int>;   // ordered (u,v)
using Edge = std::pair<int, int>;  // unordered, stored with first < second

struct Walk {
    std::vector<int> vertices;
    std::size_t size() const { return vertices.size(); }
};

// Simple digraph: dense 0-based vertex ids, no self-loops, no parallel arcs.
class Digraph {
public:
    Digraph() = default;
    Digraph(int n, std::vector<Arc> arcs);

    int n() const { return n_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<int>& out(int v) const { return out_[v]; }
    const std::vector<int>& in(int v) const { return in_[v]; }
    bool has_arc(int u, int v) const;

    Digraph induced(const std::vector<int>& verts, std::vector<int>* old_id = nullptr) const;

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_, in_;
};

// Simple undirected graph.
class UGraph {
public:
    UGraph() = default;
    UGraph(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& adj(int v) const { return adj_[v]; }
    bool has_edge(int u, int v) const;
    Digraph bidirected() const;  // each edge replaced by two opposite arcs

    UGraph induced(const std::vector<int>& verts, std::vector<int>* old_id = nullptr) const;
    std::vector<std::vector<int>> components() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// Directed multigraph with exact (arbitrary-precision) arc multiplicities.
// Zero-multiplicity arcs are absent from the map.
struct MultiDigraph {
    int n = 0;
    std::map<Arc, Nat> mult;

    void add(int u, int v, const Nat& m);
    Nat total() const;
};

struct MultiUGraph {
    int n = 0;
    std::map<Edge, Nat> mult;  // keys normalized first < second

    void add(int u, int v, const Nat& m);
    Nat total() const;
};

// Vertex coloring with colors 1..c (paper-style 1-based), total on [0,n).
struct Coloring {
    int c = 0;
    std::vector<int> color;
};

// Strongly connected components, ordered so that no arc goes from a later
// component to an earlier one.
std::vector<std::vector<int>> scc(const Digraph& g);

bool euler_trail_exists(const MultiDigraph& g, int s, int t);
bool euler_trail_exists_undirected(const MultiUGraph& g, int s, int t);

// Hierholzer realization; nullopt = trail too large for cap.
// Throws PreconditionViolated when no trail exists.
std::optional<Walk> euler_trail_construct(const MultiDigraph& g, int s, int t, const Nat& cap);
std::optional<Walk> euler_trail_construct(const MultiUGraph& g, int s, int t, const Nat& cap);

std::vector<Edge> maximal_matching(const UGraph& g);
std::vector<int> vertex_cover_from(const std::vector<Edge>& matching);

}  // namespace rsimple
