#include "rsimple/graph.hpp"

#include <algorithm>
#include <set>

#include "rsimple/errors.hpp"

namespace rsimple {

namespace {

void check_endpoint(int v, int n) {
    if (v < 0 || v >= n) throw ValidationError("vertex id out of range: " + std::to_string(v));
}

}  // namespace

Digraph::Digraph(int n, std::vector<Arc> arcs) : n_(n) {
    if (n < 0) throw ValidationError("negative vertex count");
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    for (auto [u, v] : arcs) {
        check_endpoint(u, n);
        check_endpoint(v, n);
        if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
    }
    arcs_ = std::move(arcs);
    out_.assign(n_, {});
    in_.assign(n_, {});
    for (auto [u, v] : arcs_) {
        out_[u].push_back(v);
        in_[v].push_back(u);
    }
}

bool Digraph::has_arc(int u, int v) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), Arc{u, v});
}

Digraph Digraph::induced(const std::vector<int>& verts, std::vector<int>* old_id) const {
    std::vector<int> new_id(n_, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) new_id[verts[i]] = static_cast<int>(i);
    std::vector<Arc> sub;
    for (auto [u, v] : arcs_)
        if (new_id[u] >= 0 && new_id[v] >= 0) sub.push_back({new_id[u], new_id[v]});
    if (old_id) *old_id = verts;
    return Digraph(static_cast<int>(verts.size()), std::move(sub));
}

UGraph::UGraph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) throw ValidationError("negative vertex count");
    for (auto& e : edges) {
        if (e.first > e.second) std::swap(e.first, e.second);
        check_endpoint(e.first, n);
        check_endpoint(e.second, n);
        if (e.first == e.second) throw ValidationError("self-loop at vertex " + std::to_string(e.first));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    adj_.assign(n_, {});
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
}

bool UGraph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

Digraph UGraph::bidirected() const {
    std::vector<Arc> arcs;
    arcs.reserve(edges_.size() * 2);
    for (auto [u, v] : edges_) {
        arcs.push_back({u, v});
        arcs.push_back({v, u});
    }
    return Digraph(n_, std::move(arcs));
}

UGraph UGraph::induced(const std::vector<int>& verts, std::vector<int>* old_id) const {
    std::vector<int> new_id(n_, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) new_id[verts[i]] = static_cast<int>(i);
    std::vector<Edge> sub;
    for (auto [u, v] : edges_)
        if (new_id[u] >= 0 && new_id[v] >= 0) sub.push_back({new_id[u], new_id[v]});
    if (old_id) *old_id = verts;
    return UGraph(static_cast<int>(verts.size()), std::move(sub));
}

std::vector<std::vector<int>> UGraph::components() const {
    std::vector<int> comp(n_, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (int w : adj_[v])
                if (comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

void MultiDigraph::add(int u, int v, const Nat& m) {
    if (u == v) throw ValidationError("self-loop in multigraph");
    check_endpoint(u, n);
    check_endpoint(v, n);
    if (m == 0) return;
    mult[{u, v}] += m;
}

Nat MultiDigraph::total() const {
    Nat t = 0;
    for (auto& [a, m] : mult) t += m;
    return t;
}

void MultiUGraph::add(int u, int v, const Nat& m) {
    if (u == v) throw ValidationError("self-loop in multigraph");
    check_endpoint(u, n);
    check_endpoint(v, n);
    if (m == 0) return;
    if (u > v) std::swap(u, v);
    mult[{u, v}] += m;
}

Nat MultiUGraph::total() const {
    Nat t = 0;
    for (auto& [e, m] : mult) t += m;
    return t;
}

std::vector<std::vector<int>> scc(const Digraph& g) {
    // Iterative Tarjan; components come out in reverse topological order.
    int n = g.n();
    std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0), stack;
    std::vector<std::vector<int>> comps;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& succ = g.out(f.v);
            if (f.child < succ.size()) {
                int w = succ[f.child++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) {
                    int p = frames.back().v;
                    low[p] = std::min(low[p], low[v]);
                }
            }
        }
    }
    std::reverse(comps.begin(), comps.end());
    return comps;
}

namespace {

// Connectivity of the support, ignoring isolated vertices.
template <class MultMap>
bool support_connected(int n, const MultMap& mult) {
    std::vector<std::vector<int>> adj(n);
    std::vector<char> touched(n, 0);
    int start = -1;
    for (auto& [key, m] : mult) {
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
        touched[key.first] = touched[key.second] = 1;
        start = key.first;
    }
    if (start < 0) return true;  // no arcs at all
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    for (int v = 0; v < n; ++v)
        if (touched[v] && !seen[v]) return false;
    return true;
}

}  // namespace

bool euler_trail_exists(const MultiDigraph& g, int s, int t) {
    if (s < 0 || s >= g.n || t < 0 || t >= g.n) throw ValidationError("endpoint out of range");
    if (g.mult.empty()) return s == t;
    if (!support_connected(g.n, g.mult)) return false;
    std::vector<Nat> din(g.n, 0), dout(g.n, 0);
    for (auto& [a, m] : g.mult) {
        dout[a.first] += m;
        din[a.second] += m;
    }
    if (din[s] + dout[s] == 0 || din[t] + dout[t] == 0) return false;
    for (int v = 0; v < g.n; ++v) {
        if (s != t && v == s) {
            if (dout[v] != din[v] + 1) return false;
        } else if (s != t && v == t) {
            if (din[v] != dout[v] + 1) return false;
        } else {
            if (din[v] != dout[v]) return false;
        }
    }
    return true;
}

bool euler_trail_exists_undirected(const MultiUGraph& g, int s, int t) {
    if (s < 0 || s >= g.n || t < 0 || t >= g.n) throw ValidationError("endpoint out of range");
    if (g.mult.empty()) return s == t;
    if (!support_connected(g.n, g.mult)) return false;
    std::vector<Nat> deg(g.n, 0);
    for (auto& [e, m] : g.mult) {
        deg[e.first] += m;
        deg[e.second] += m;
    }
    if (deg[s] == 0 || deg[t] == 0) return false;
    for (int v = 0; v < g.n; ++v) {
        bool odd = (deg[v] & 1) != 0;
        bool should_be_odd = (s != t) && (v == s || v == t);
        if (odd != should_be_odd) return false;
    }
    return true;
}

namespace {

// Shared Hierholzer over an adjacency structure with machine-sized counts.
// The caller has already verified existence and that total fits the cap.
struct EulerArcs {
    // per vertex: list of (neighbor, remaining count); directed uses out-arcs,
    // undirected mirrors each edge into both lists with a shared counter.
    std::vector<std::vector<std::pair<int, std::int64_t*>>> adj;
    std::vector<std::size_t> cursor;
};

Walk hierholzer(EulerArcs& ea, int s, std::int64_t total_arcs) {
    std::vector<int> circuit;
    circuit.reserve(static_cast<std::size_t>(total_arcs) + 1);
    std::vector<int> stack{s};
    while (!stack.empty()) {
        int v = stack.back();
        auto& cur = ea.cursor[v];
        auto& lst = ea.adj[v];
        while (cur < lst.size() && *lst[cur].second == 0) ++cur;
        if (cur == lst.size()) {
            circuit.push_back(v);
            stack.pop_back();
        } else {
            *lst[cur].second -= 1;
            stack.push_back(lst[cur].first);
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    return Walk{std::move(circuit)};
}

}  // namespace

std::optional<Walk> euler_trail_construct(const MultiDigraph& g, int s, int t, const Nat& cap) {
    if (!euler_trail_exists(g, s, t)) throw PreconditionViolated("no Euler trail for given endpoints");
    Nat total = g.total();
    if (total > cap) return std::nullopt;
    auto total64 = to_int64(total);
    if (!total64) return std::nullopt;

    std::vector<std::int64_t> counts;
    counts.reserve(g.mult.size());
    EulerArcs ea;
    ea.adj.assign(g.n, {});
    ea.cursor.assign(g.n, 0);
    for (auto& [a, m] : g.mult) counts.push_back(static_cast<std::int64_t>(m));
    std::size_t i = 0;
    for (auto& [a, m] : g.mult) ea.adj[a.first].push_back({a.second, &counts[i++]});
    Walk w = hierholzer(ea, s, *total64);
    return w;
}

std::optional<Walk> euler_trail_construct(const MultiUGraph& g, int s, int t, const Nat& cap) {
    if (!euler_trail_exists_undirected(g, s, t)) throw PreconditionViolated("no Euler trail for given endpoints");
    Nat total = g.total();
    if (total > cap) return std::nullopt;
    auto total64 = to_int64(total);
    if (!total64) return std::nullopt;

    std::vector<std::int64_t> counts;
    counts.reserve(g.mult.size());
    EulerArcs ea;
    ea.adj.assign(g.n, {});
    ea.cursor.assign(g.n, 0);
    for (auto& [e, m] : g.mult) counts.push_back(static_cast<std::int64_t>(m));
    std::size_t i = 0;
    for (auto& [e, m] : g.mult) {
        ea.adj[e.first].push_back({e.second, &counts[i]});
        ea.adj[e.second].push_back({e.first, &counts[i]});
        ++i;
    }
    Walk w = hierholzer(ea, s, *total64);
    return w;
}

std::vector<Edge> maximal_matching(const UGraph& g) {
    std::vector<char> used(g.n(), 0);
    std::vector<Edge> m;
    for (auto [u, v] : g.edges())
        if (!used[u] && !used[v]) {
            used[u] = used[v] = 1;
            m.push_back({u, v});
        }
    return m;
}

std::vector<int> vertex_cover_from(const std::vector<Edge>& matching) {
    std::set<int> cover;
    for (auto [u, v] : matching) {
        cover.insert(u);
        cover.insert(v);
    }
    return std::vector<int>(cover.begin(), cover.end());
}

}  // namespace rsimple
