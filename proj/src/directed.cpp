#include "rsimple/directed.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <map>
#include <set>
#include <string>

#include "rsimple/errors.hpp"
#include "rsimple/flow.hpp"
#include "rsimple/parallel.hpp"

namespace rsimple {

// ---------------------------------------------------------------------------
// Topology helpers

int Topology::in_deg(int color) const {
    int d = 0;
    for (auto& [a, b] : arcs)
        if (b == color) ++d;
    return d;
}

int Topology::out_deg(int color) const {
    int d = 0;
    for (auto& [a, b] : arcs)
        if (a == color) ++d;
    return d;
}

bool Topology::weakly_connected() const {
    if (colors.empty()) return true;
    std::map<int, std::vector<int>> adj;
    for (auto& [a, b] : arcs) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::set<int> seen{colors[0]};
    std::vector<int> stack{colors[0]};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (seen.insert(w).second) stack.push_back(w);
    }
    return seen.size() == colors.size();
}

QuotientDigraph color_quotient(const ColoredDigraph& g) {
    std::set<int> colors;
    std::set<std::pair<int, int>> arcs;
    for (int v = 0; v < g.g.n(); ++v) colors.insert(g.col.color[v]);
    for (auto [u, v] : g.g.arcs()) {
        int a = g.col.color[u], b = g.col.color[v];
        if (a != b) arcs.insert({a, b});
    }
    QuotientDigraph q;
    q.colors.assign(colors.begin(), colors.end());
    q.arcs.assign(arcs.begin(), arcs.end());
    return q;
}

// ---------------------------------------------------------------------------
// Connected sub-arc-set enumeration (ESU over the arc-adjacency graph).

namespace {

struct ArcSetEnumerator {
    const QuotientDigraph& q;
    int ell;
    const EnumBudget& budget;
    // optional monotone include-filter; a rejected arc is still skippable later
    std::function<bool(const std::vector<int>&, int)> include_ok;
    std::function<bool(const std::vector<int>&)> emit;  // false = stop

    std::vector<std::vector<int>> adj;  // arcs sharing an endpoint color
    std::vector<char> flagged;
    std::vector<int> sub;
    std::size_t nodes = 0;
    bool stopped = false;

    explicit ArcSetEnumerator(const QuotientDigraph& q_, int ell_, const EnumBudget& b_)
        : q(q_), ell(ell_), budget(b_) {
        int m = static_cast<int>(q.arcs.size());
        std::map<int, std::vector<int>> by_color;
        for (int i = 0; i < m; ++i) {
            by_color[q.arcs[i].first].push_back(i);
            by_color[q.arcs[i].second].push_back(i);
        }
        adj.assign(m, {});
        for (auto& [c, lst] : by_color)
            for (int i : lst)
                for (int j : lst)
                    if (i != j) adj[i].push_back(j);
        for (auto& lst : adj) {
            std::sort(lst.begin(), lst.end());
            lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        }
        flagged.assign(m, 0);
    }

    void run() {
        int m = static_cast<int>(q.arcs.size());
        for (int seed = 0; seed < m && !stopped; ++seed) {
            sub.assign(1, seed);
            if (include_ok && !include_ok({}, seed)) continue;
            flagged[seed] = 1;
            std::vector<int> ext;
            for (int u : adj[seed])
                if (u > seed) {
                    flagged[u] = 1;
                    ext.push_back(u);
                }
            extend(seed, ext);
            flagged[seed] = 0;
            for (int u : adj[seed])
                if (u > seed) flagged[u] = 0;
        }
    }

    void extend(int seed, std::vector<int> ext) {
        if (stopped) return;
        if (++nodes > budget.nodes) throw BudgetExceeded("topology enumeration exceeded node budget");
        if (!emit(sub)) {
            stopped = true;
            return;
        }
        if (static_cast<int>(sub.size()) >= ell) return;
        while (!ext.empty() && !stopped) {
            int w = ext.back();
            ext.pop_back();
            if (include_ok && !include_ok(sub, w)) continue;
            sub.push_back(w);
            std::vector<int> added;
            std::vector<int> next = ext;
            for (int u : adj[w])
                if (u > seed && !flagged[u]) {
                    flagged[u] = 1;
                    added.push_back(u);
                    next.push_back(u);
                }
            extend(seed, std::move(next));
            for (int u : added) flagged[u] = 0;
            sub.pop_back();
        }
    }
};

Topology make_topology(const QuotientDigraph& q, const std::vector<int>& arc_ids) {
    Topology t;
    std::set<int> cols;
    t.arcs.reserve(arc_ids.size());
    for (int id : arc_ids) {
        t.arcs.push_back(q.arcs[id]);
        cols.insert(q.arcs[id].first);
        cols.insert(q.arcs[id].second);
    }
    std::sort(t.arcs.begin(), t.arcs.end());
    t.colors.assign(cols.begin(), cols.end());
    return t;
}

}  // namespace

void enumerate_topologies(const QuotientDigraph& quotient, int ell,
                          const std::function<bool(const Topology&)>& emit,
                          const EnumBudget& budget) {
    if (ell < 1) return;
    std::size_t emitted = 0;
    ArcSetEnumerator en(quotient, ell, budget);
    en.emit = [&](const std::vector<int>& ids) {
        if (++emitted > budget.emitted) throw BudgetExceeded("too many topologies emitted");
        return emit(make_topology(quotient, ids));
    };
    en.run();
}

// ---------------------------------------------------------------------------
// Enrichment via an exact circulation with lower bounds.

std::optional<Enrichment> enrich(const Topology& T, const Nat& r, int i, int j) {
    if (i == j) throw PreconditionViolated("endpoint colors must differ");
    auto idx_of = [&](int color) -> int {
        auto it = std::lower_bound(T.colors.begin(), T.colors.end(), color);
        if (it == T.colors.end() || *it != color) return -1;
        return static_cast<int>(it - T.colors.begin());
    };
    int si = idx_of(i), ti = idx_of(j);
    if (si < 0 || ti < 0) return std::nullopt;
    if (T.arcs.empty()) return std::nullopt;

    int nv = static_cast<int>(T.colors.size());
    FlowNetwork net;
    net.nodes = 2 * nv;
    // node v split: in = 2v, out = 2v+1; throughput capped at r
    for (int v = 0; v < nv; ++v) net.add(2 * v, 2 * v + 1, 0, r, 0);
    std::vector<int> objective;
    for (auto& [a, b] : T.arcs) {
        int va = idx_of(a), vb = idx_of(b);
        objective.push_back(net.add(2 * va + 1, 2 * vb, 1, r, 0));
    }
    net.add(2 * ti + 1, 2 * si, 1, 1, 0);  // the walk's start excess

    auto res = max_value_circulation_with_lower_bounds(net, objective);
    if (!res) return std::nullopt;
    Enrichment e;
    e.s_color = i;
    e.t_color = j;
    e.total = res->objective_total;
    e.phi.reserve(T.arcs.size());
    for (int id : objective) e.phi.push_back(res->flow[id]);
    return e;
}

// ---------------------------------------------------------------------------
// Annotated enriched-topology check (recursive cycle elimination).

namespace {

struct EnrichedSolver {
    const Nat& r;
    const SolveEnrichedBudget& budget;
    std::size_t nodes = 0;

    EnrichedSolver(const Nat& r_, const SolveEnrichedBudget& b_) : r(r_), budget(b_) {}

    void tick() {
        if (++nodes > budget.nodes) throw BudgetExceeded("enriched-topology recursion budget");
    }

    static std::vector<int> color_class(const ColoredDigraph& g, int color) {
        std::vector<int> out;
        for (int v = 0; v < g.g.n(); ++v)
            if (g.col.color[v] == color) out.push_back(v);
        return out;
    }

    // Balance check of Definition-style endpoint conditions; returns false on
    // any violation (then nothing can match the prescribed arc counts).
    bool balanced(const Topology& T, const std::vector<Nat>& phi, int s_color, int t_color) {
        std::map<int, Nat> din, dout;
        for (int c : T.colors) din[c] = dout[c] = 0;
        for (std::size_t a = 0; a < T.arcs.size(); ++a) {
            if (phi[a] < 1) return false;
            dout[T.arcs[a].first] += phi[a];
            din[T.arcs[a].second] += phi[a];
        }
        for (int c : T.colors) {
            if (c == s_color) {
                if (dout[c] != din[c] + 1 || dout[c] > r) return false;
            } else if (c == t_color) {
                if (din[c] != dout[c] + 1 || din[c] > r) return false;
            } else {
                if (din[c] != dout[c] || din[c] > r) return false;
            }
        }
        return true;
    }

    static bool has_directed_cycle(const Topology& T) {
        std::map<int, std::vector<int>> out;
        std::map<int, int> state;
        for (int c : T.colors) state[c] = 0;
        for (auto& [a, b] : T.arcs) out[a].push_back(b);
        std::function<bool(int)> dfs = [&](int v) {
            state[v] = 1;
            for (int w : out[v]) {
                if (state[w] == 1) return true;
                if (state[w] == 0 && dfs(w)) return true;
            }
            state[v] = 2;
            return false;
        };
        for (int c : T.colors)
            if (state[c] == 0 && dfs(c)) return true;
        return false;
    }

    // Basis: topology is a directed path, phi == 1, matched by a layered scan.
    bool solve_path(const ColoredDigraph& g, int s, int t, const Topology& T,
                    const std::vector<Nat>& phi, const std::vector<int>& A) {
        for (const Nat& p : phi)
            if (p != 1) return false;
        // path shape: every in/out degree <= 1, arcs = vertices - 1
        if (T.arcs.size() + 1 != T.colors.size()) return false;
        std::map<int, int> next;
        std::map<int, int> indeg;
        for (int c : T.colors) indeg[c] = 0;
        for (auto& [a, b] : T.arcs) {
            if (next.count(a)) return false;
            next[a] = b;
            indeg[b]++;
            if (indeg[b] > 1) return false;
        }
        int start = -1;
        for (int c : T.colors)
            if (indeg[c] == 0) {
                if (start != -1) return false;
                start = c;
            }
        if (start == -1) return false;
        std::vector<int> seq{start};
        while (next.count(seq.back())) seq.push_back(next[seq.back()]);
        if (seq.size() != T.colors.size()) return false;
        if (g.col.color[s] != seq.front() || g.col.color[t] != seq.back()) return false;

        // A-constraints: every required vertex's color occurs in T, and two
        // distinct required vertices may not share a color
        std::vector<int> req(A);
        std::sort(req.begin(), req.end());
        req.erase(std::unique(req.begin(), req.end()), req.end());
        std::set<int> tcolors(T.colors.begin(), T.colors.end());
        std::map<int, int> a_of_color;
        for (int a : req) {
            if (!tcolors.count(g.col.color[a])) return false;
            auto [it, inserted] = a_of_color.emplace(g.col.color[a], a);
            if (!inserted && it->second != a) return false;
        }

        auto allowed = [&](int v) {
            int c = g.col.color[v];
            auto it = a_of_color.find(c);
            return it == a_of_color.end() || it->second == v;
        };
        if (!allowed(s) || !allowed(t)) return false;

        // layered reachability along the color sequence
        std::vector<char> cur(g.g.n(), 0);
        if (g.col.color[s] != seq[0]) return false;
        cur[s] = 1;
        for (std::size_t i = 1; i < seq.size(); ++i) {
            std::vector<char> nxt(g.g.n(), 0);
            for (int v = 0; v < g.g.n(); ++v) {
                if (!cur[v]) continue;
                for (int w : g.g.out(v))
                    if (g.col.color[w] == seq[i] && allowed(w)) nxt[w] = 1;
            }
            cur.swap(nxt);
        }
        return cur[t] != 0;
    }

    struct RelevantTuple {
        std::vector<int> cycle;          // color sequence v1..vq
        Nat m_min;                       // minimum phi over cycle arcs
        std::vector<std::size_t> e_set;  // arc indices with phi == m_min
        // components of T - E
        struct Component {
            Topology topo;
            std::vector<Nat> phi;
            int anchor_color;  // lowest color shared with the cycle
        };
        std::vector<Component> comps;
    };

    std::optional<std::vector<int>> shortest_cycle(const Topology& T) {
        std::map<int, std::vector<int>> out;
        for (auto& [a, b] : T.arcs) out[a].push_back(b);
        for (auto& [c, lst] : out) std::sort(lst.begin(), lst.end());
        std::optional<std::vector<int>> best;
        for (auto& [a, b] : T.arcs) {
            // shortest b -> a path inside T, smallest-color parents
            std::map<int, int> dist, par;
            std::vector<int> frontier{b};
            dist[b] = 0;
            while (!frontier.empty() && !dist.count(a)) {
                std::vector<int> nf;
                for (int v : frontier)
                    for (int w : out[v])
                        if (!dist.count(w)) {
                            dist[w] = dist[v] + 1;
                            par[w] = v;
                            nf.push_back(w);
                        }
                frontier = std::move(nf);
            }
            if (!dist.count(a)) continue;
            std::vector<int> cyc;
            for (int v = a; v != b; v = par[v]) cyc.push_back(v);
            cyc.push_back(b);
            std::reverse(cyc.begin(), cyc.end());  // b .. a, arcs along T, then (a,b) closes
            // canonical rotation: start at smallest color
            auto mn = std::min_element(cyc.begin(), cyc.end());
            std::rotate(cyc.begin(), mn, cyc.end());
            if (!best || cyc.size() < best->size() || (cyc.size() == best->size() && cyc < *best))
                best = cyc;
        }
        return best;
    }

    RelevantTuple make_tuple(const Topology& T, const std::vector<Nat>& phi) {
        RelevantTuple rt;
        auto cyc = shortest_cycle(T);
        assert(cyc);
        rt.cycle = *cyc;
        std::set<std::pair<int, int>> cycle_arcs;
        for (std::size_t i = 0; i < rt.cycle.size(); ++i)
            cycle_arcs.insert({rt.cycle[i], rt.cycle[(i + 1) % rt.cycle.size()]});
        rt.m_min = 0;
        bool first = true;
        for (std::size_t a = 0; a < T.arcs.size(); ++a)
            if (cycle_arcs.count(T.arcs[a])) {
                if (first || phi[a] < rt.m_min) rt.m_min = phi[a];
                first = false;
            }
        for (std::size_t a = 0; a < T.arcs.size(); ++a)
            if (cycle_arcs.count(T.arcs[a]) && phi[a] == rt.m_min) rt.e_set.push_back(a);

        // components of T - E (vertices all kept, arcs minus e_set)
        std::set<std::size_t> removed(rt.e_set.begin(), rt.e_set.end());
        std::map<int, std::vector<int>> und;
        for (std::size_t a = 0; a < T.arcs.size(); ++a) {
            if (removed.count(a)) continue;
            und[T.arcs[a].first].push_back(T.arcs[a].second);
            und[T.arcs[a].second].push_back(T.arcs[a].first);
        }
        std::set<int> cyc_set(rt.cycle.begin(), rt.cycle.end());
        std::set<int> seen;
        for (int c : T.colors) {
            if (seen.count(c)) continue;
            std::vector<int> verts{c};
            seen.insert(c);
            std::vector<int> stack{c};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : und[v])
                    if (seen.insert(w).second) {
                        verts.push_back(w);
                        stack.push_back(w);
                    }
            }
            std::sort(verts.begin(), verts.end());
            RelevantTuple::Component comp;
            std::set<int> vset(verts.begin(), verts.end());
            for (std::size_t a = 0; a < T.arcs.size(); ++a) {
                if (removed.count(a)) continue;
                if (vset.count(T.arcs[a].first)) {
                    comp.topo.arcs.push_back(T.arcs[a]);
                    Nat p = phi[a];
                    if (cycle_arcs.count(T.arcs[a])) p -= rt.m_min;
                    comp.phi.push_back(p);
                }
            }
            // occurring colors only; arc-less components keep the lone vertex
            std::set<int> used;
            for (auto& [x, y] : comp.topo.arcs) {
                used.insert(x);
                used.insert(y);
            }
            if (used.empty()) used.insert(c);
            comp.topo.colors.assign(used.begin(), used.end());
            comp.anchor_color = -1;
            for (int v : comp.topo.colors)
                if (cyc_set.count(v)) {
                    comp.anchor_color = v;
                    break;
                }
            assert(comp.anchor_color != -1);
            rt.comps.push_back(std::move(comp));
        }
        return rt;
    }

    bool solve(const ColoredDigraph& g, int s, int t, const Topology& T,
               const std::vector<Nat>& phi, const std::vector<int>& A) {
        tick();
        if (T.arcs.empty()) return false;
        int s_color = g.col.color[s], t_color = g.col.color[t];
        if (!balanced(T, phi, s_color, t_color)) return false;
        if (!T.weakly_connected()) return false;
        if (!has_directed_cycle(T)) return solve_path(g, s, t, T, phi, A);

        RelevantTuple rt = make_tuple(T, phi);
        // map anchor colors to component ids
        std::map<int, int> comp_of_anchor;
        for (std::size_t qi = 0; qi < rt.comps.size(); ++qi)
            comp_of_anchor[rt.comps[qi].anchor_color] = static_cast<int>(qi);

        std::set<int> tcolors(T.colors.begin(), T.colors.end());
        for (int a : A)
            if (!tcolors.count(g.col.color[a])) return false;

        // memoized recursive component checks keyed (component, anchor vertex)
        std::map<std::pair<int, int>, bool> memo;
        auto check_comp = [&](int qi, int u) -> bool {
            auto key = std::make_pair(qi, u);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
            const auto& comp = rt.comps[qi];
            std::vector<int> subA{u};
            for (int a : A) {
                bool in_comp = std::binary_search(comp.topo.colors.begin(), comp.topo.colors.end(),
                                                  g.col.color[a]);
                if (in_comp) subA.push_back(a);
            }
            bool has_s = std::binary_search(comp.topo.colors.begin(), comp.topo.colors.end(), s_color);
            bool has_t = std::binary_search(comp.topo.colors.begin(), comp.topo.colors.end(), t_color);
            bool res;
            if (has_s && has_t) {
                res = solve(g, s, t, comp.topo, comp.phi, subA);
            } else {
                // closed excursion anchored at u: attach a fresh-colored pendant
                ColoredDigraph g2 = g;
                int fresh = g2.col.c + 1;
                std::vector<Arc> arcs2 = g2.g.arcs();
                int x = g2.g.n();
                arcs2.push_back({u, x});
                g2.g = Digraph(x + 1, std::move(arcs2));
                g2.col.c = fresh;
                g2.col.color.push_back(fresh);
                Topology t2 = comp.topo;
                std::vector<Nat> phi2 = comp.phi;
                t2.arcs.push_back({comp.anchor_color, fresh});
                phi2.push_back(1);
                // keep arcs sorted together with phi
                std::vector<std::size_t> order(t2.arcs.size());
                for (std::size_t z = 0; z < order.size(); ++z) order[z] = z;
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    return t2.arcs[a] < t2.arcs[b];
                });
                Topology t3;
                std::vector<Nat> phi3;
                for (std::size_t z : order) {
                    t3.arcs.push_back(t2.arcs[z]);
                    phi3.push_back(phi2[z]);
                }
                std::set<int> cols(comp.topo.colors.begin(), comp.topo.colors.end());
                cols.insert(fresh);
                t3.colors.assign(cols.begin(), cols.end());
                res = solve(g2, u, x, t3, phi3, subA);
            }
            memo[key] = res;
            return res;
        };

        // cycle DP over candidate vertex assignments
        const auto& cyc = rt.cycle;
        int q = static_cast<int>(cyc.size());
        auto class_of = [&](int color) { return color_class(g, color); };
        std::vector<std::vector<int>> classes(q);
        for (int i = 0; i < q; ++i) classes[i] = class_of(cyc[i]);
        for (int i = 0; i < q; ++i)
            if (classes[i].empty()) return false;

        auto anchor_ok = [&](int pos, int u) -> bool {
            auto it = comp_of_anchor.find(cyc[pos]);
            if (it == comp_of_anchor.end()) return true;
            return check_comp(it->second, u);
        };

        for (int w : classes[0]) {
            if (!anchor_ok(0, w)) continue;
            std::vector<char> reach(g.g.n(), 0);
            reach[w] = 1;
            for (int i = 1; i < q; ++i) {
                std::vector<char> nxt(g.g.n(), 0);
                bool any = false;
                for (int u : classes[i]) {
                    bool hit = false;
                    for (int p : g.g.in(u))
                        if (g.col.color[p] == cyc[i - 1] && reach[p]) {
                            hit = true;
                            break;
                        }
                    if (hit && anchor_ok(i, u)) {
                        nxt[u] = 1;
                        any = true;
                    }
                }
                reach.swap(nxt);
                if (!any) break;
            }
            for (int u : classes[q - 1])
                if (reach[u] && g.g.has_arc(u, w)) return true;
        }
        return false;
    }
};

}  // namespace

bool solve_enriched(const ColoredDigraph& g, const Nat& r, int s, int t, const Topology& T,
                    const std::vector<Nat>& phi, const std::vector<int>& A,
                    const SolveEnrichedBudget& budget) {
    if (s == t) throw PreconditionViolated("endpoints must be distinct vertices");
    EnrichedSolver solver(r, budget);
    return solver.solve(g, s, t, T, phi, A);
}

// ---------------------------------------------------------------------------
// Color-coded sweeps

namespace {

struct SweepFilters {
    int target_color;  // walks must end on this color (in-degree forced to 1)
};

// Enumerate topologies that could carry an enrichment ending at target_color:
// monotone prune on the target in-degree, final fitness filters at emit.
void enumerate_feasible(const QuotientDigraph& q, int ell, int target_color,
                        const EnumBudget& budget,
                        const std::function<bool(const Topology&)>& emit) {
    if (ell < 1) return;
    ArcSetEnumerator en(q, ell, budget);
    en.include_ok = [&](const std::vector<int>& sub, int cand) {
        if (q.arcs[cand].second != target_color) return true;
        for (int id : sub)
            if (q.arcs[id].second == target_color) return false;
        return true;
    };
    std::size_t emitted = 0;
    en.emit = [&](const std::vector<int>& ids) {
        // fitness: contains target with in-degree exactly one and no out-arcs;
        // all other vertices have out >= 1; at most one vertex may lack in-arcs
        std::map<int, int> din, dout;
        for (int id : ids) {
            dout[q.arcs[id].first]++;
            din[q.arcs[id].second]++;
        }
        if (din[target_color] != 1 || dout.count(target_color)) return true;
        int in_zero = 0;
        for (auto& [c, d] : dout)
            if (!din.count(c)) ++in_zero;
        if (in_zero > 1) return true;
        for (auto& [c, d] : din)
            if (c != target_color && !dout.count(c)) return true;  // dead end off-target
        if (++emitted > budget.emitted) throw BudgetExceeded("too many topologies emitted");
        return emit(make_topology(q, ids));
    };
    en.run();
}

struct FamilyPick {
    ColoringFamily fam;
    int pend_color;
};

FamilyPick pick_family_directed(int n_real, const Nat& b, const DirectedParams& p) {
    // c_real colors for the real vertices; the pendant color is one more.
    Nat c_real_nat = b - 1;
    switch (p.coloring) {
        case ColoringChoice::Injective: {
            if (c_real_nat < n_real) throw InvalidKind("bound too small for an injective coloring");
            int c = std::max(n_real, 1);
            return {ColoringFamily::injective(n_real, c), c + 1};
        }
        case ColoringChoice::Exhaustive: {
            auto c64 = to_int64(c_real_nat);
            if (!c64 || *c64 > (1 << 20)) throw BudgetExceeded("exhaustive coloring budget");
            int c = std::max<int>(1, static_cast<int>(*c64));
            return {ColoringFamily::exhaustive(n_real, c, p.exhaustive_budget), c + 1};
        }
        case ColoringChoice::Randomized: {
            int c = static_cast<int>(*to_int64(std::min(c_real_nat, Nat(std::max(n_real, 1)))));
            c = std::max(c, 1);
            std::uint64_t trials =
                p.trials ? p.trials : randomized_trials_default(n_real, c, 1'000'000);
            return {ColoringFamily::randomized(n_real, c, trials, p.seed), c + 1};
        }
        case ColoringChoice::Auto:
        default: {
            if (c_real_nat >= n_real) {
                int c = std::max(n_real, 1);
                return {ColoringFamily::injective(n_real, c), c + 1};
            }
            auto c64 = to_int64(c_real_nat);
            int c = std::max<int>(1, static_cast<int>(*c64));
            Nat count = 1;
            bool small = true;
            for (int i = 0; i < n_real && small; ++i) {
                count *= c;
                if (count > p.exhaustive_budget) small = false;
            }
            if (small) return {ColoringFamily::exhaustive(n_real, c, p.exhaustive_budget), c + 1};
            std::uint64_t trials =
                p.trials ? p.trials : randomized_trials_default(n_real, c, 100'000);
            return {ColoringFamily::randomized(n_real, c, trials, p.seed), c + 1};
        }
    }
}

Nat default_bound(const Nat& k, const Nat& r) {
    Nat q = ceil_div(k, r);
    return 30 * q * q + 1;
}

}  // namespace

Nat colorful_rsls(const ColoredDigraph& g, const Nat& r, int s, int t, int ell,
                  const DirectedParams& params) {
    if (s == t) throw PreconditionViolated("s and t must differ");
    if (g.col.color[s] == g.col.color[t]) throw PreconditionViolated("endpoint colors must differ");
    QuotientDigraph q = color_quotient(g);
    int cs = g.col.color[s], ct = g.col.color[t];
    Nat best = 0;
    int ell_eff = std::min<long long>(ell, static_cast<long long>(q.arcs.size()));
    enumerate_topologies(
        q, ell_eff,
        [&](const Topology& T) {
            auto e = enrich(T, r, cs, ct);
            if (!e) return true;
            if (e->total < best) return true;
            if (solve_enriched(g, r, s, t, T, e->phi, {}, params.enriched_budget))
                best = std::max(best, Nat(e->total + 1));
            return true;
        },
        params.enum_budget);
    return best;
}

bool DirectedCache::Key::operator<(const Key& o) const {
    return std::tie(comp_index, ell, kind, c_real, trials, seed, r_dec) <
           std::tie(o.comp_index, o.ell, o.kind, o.c_real, o.trials, o.seed, o.r_dec);
}

RslsResult rsls(const Digraph& g, const Nat& k, const Nat& r, const DirectedParams& params,
                DirectedCache* cache, int comp_index) {
    int n = g.n();
    RslsResult out;
    out.table.assign(n, std::vector<Nat>(n, 0));
    if (n == 0) return out;

    Nat b = params.bound_override ? Nat(*params.bound_override) : default_bound(k, r);
    if (b < 2) throw ValidationError("bound must be at least 2");
    FamilyPick fp = pick_family_directed(n, b, params);
    int pend = fp.pend_color;

    // pendant graph: v' = n + v with the single arc (v, v')
    std::vector<Arc> arcs = g.arcs();
    for (int v = 0; v < n; ++v) arcs.push_back({v, n + v});
    Digraph gp(2 * n, std::move(arcs));

    long long ell_cap;
    {
        auto b64 = to_int64(b);
        ell_cap = b64 ? *b64 : std::numeric_limits<long long>::max();
        out.bound_used = b64 ? *b64 : -1;
    }

    DirectedCache::Key key{comp_index, ell_cap, static_cast<int>(fp.fam.kind()), fp.fam.c(),
                           params.trials, params.seed, to_decimal(r)};
    if (cache && comp_index >= 0) {
        auto it = cache->tables.find(key);
        if (it != cache->tables.end()) {
            out.table = it->second;
            for (int u = 0; u < n && !out.found_k_path; ++u)
                for (int v = 0; v < n; ++v)
                    if (out.table[u][v] >= k) {
                        out.found_k_path = true;
                        break;
                    }
            return out;
        }
    }
    bool allow_early_exit = cache == nullptr;

    std::atomic<bool> stop{false};
    std::string error_msg;
    std::atomic<bool> errored{false};

    fp.fam.for_each([&](const Coloring& real_col) {
        ColoredDigraph gc;
        gc.g = gp;
        gc.col.c = pend;
        gc.col.color.assign(2 * n, pend);
        for (int v = 0; v < n; ++v) gc.col.color[v] = real_col.color[v];

        std::vector<std::vector<int>> class_of(pend + 1);
        for (int v = 0; v < n; ++v) class_of[gc.col.color[v]].push_back(v);

        QuotientDigraph q = color_quotient(gc);
        int ell_eff = static_cast<int>(
            std::min<long long>(ell_cap, static_cast<long long>(q.arcs.size())));

        std::vector<Topology> topos;
        enumerate_feasible(q, ell_eff, pend, params.enum_budget, [&](const Topology& T) {
            topos.push_back(T);
            return true;
        });

        int jobs = resolve_jobs(params.jobs);
        std::vector<std::vector<std::vector<Nat>>> local(
            std::max(jobs, 1), std::vector<std::vector<Nat>>(n, std::vector<Nat>(n, 0)));

        parallel_for(topos.size(), jobs, [&](std::size_t ti) {
            if (stop.load(std::memory_order_relaxed)) return;
            int tid = 0;
#ifdef _OPENMP
            tid = omp_get_thread_num();
#endif
            auto& tbl = local[tid % local.size()];
            try {
                const Topology& T = topos[ti];
                int cv = -1;
                for (auto& [a, bcol] : T.arcs)
                    if (bcol == pend) cv = a;
                if (cv < 0) return;
                // forced start candidate: a vertex with no in-arcs, if any
                std::set<int> din0;
                for (int c : T.colors) {
                    if (c == pend) continue;
                    if (T.in_deg(c) == 0) din0.insert(c);
                }
                std::vector<int> s_cands;
                if (din0.size() > 1) return;
                if (din0.size() == 1)
                    s_cands.assign(din0.begin(), din0.end());
                else
                    for (int c : T.colors)
                        if (c != pend) s_cands.push_back(c);

                for (int i : s_cands) {
                    auto e = enrich(T, r, i, pend);
                    if (!e) continue;
                    for (int u : class_of[i]) {
                        for (int v : class_of[cv]) {
                            if (tbl[u][v] >= e->total) continue;
                            if (solve_enriched(gc, r, u, n + v, T, e->phi, {},
                                               params.enriched_budget)) {
                                tbl[u][v] = e->total;
                                if (allow_early_exit && e->total >= k)
                                    stop.store(true, std::memory_order_relaxed);
                            }
                        }
                    }
                }
            } catch (const std::exception& ex) {
                if (!errored.exchange(true)) error_msg = ex.what();
                stop.store(true, std::memory_order_relaxed);
            }
        });

        for (auto& tbl : local)
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (tbl[u][v] > out.table[u][v]) out.table[u][v] = tbl[u][v];
        return !stop.load();
    });

    if (errored.load()) throw BudgetExceeded(error_msg);

    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (out.table[u][v] >= k) out.found_k_path = true;

    if (cache && comp_index >= 0 && !stop.load()) cache->tables[key] = out.table;
    return out;
}

bool solve_directed(const Digraph& g, const Nat& k, const Nat& r, const DirectedParams& params,
                    DirectedCache* cache, long long* bound_used) {
    if (k < 1 || r < 1) throw ValidationError("k and r must be positive");
    if (bound_used) {
        Nat b = params.bound_override ? Nat(*params.bound_override) : default_bound(k, r);
        auto b64 = to_int64(b);
        *bound_used = b64 ? *b64 : -1;
    }
    if (g.n() == 0) return false;
    if (k == 1) return true;

    auto comps = scc(g);
    int nc = static_cast<int>(comps.size());
    std::vector<int> comp_of(g.n(), -1);
    for (int ci = 0; ci < nc; ++ci)
        for (int v : comps[ci]) comp_of[v] = ci;

    // capped per-component tables, indexed by local vertex ids
    std::vector<std::vector<std::vector<Nat>>> tables(nc);
    std::vector<std::vector<int>> local_id(nc);
    for (int ci = 0; ci < nc; ++ci) {
        Digraph sub = g.induced(comps[ci]);
        if (niceness_directed(sub, k, r, params.niceness) == Niceness::NotNice) return true;
        RslsResult res = rsls(sub, k, r, params, cache, ci);
        if (res.found_k_path) return true;
        tables[ci] = std::move(res.table);
        for (auto& row : tables[ci])
            for (auto& val : row)
                if (val > k) val = k;
    }

    std::vector<int> local(g.n(), -1);
    for (int ci = 0; ci < nc; ++ci)
        for (std::size_t i = 0; i < comps[ci].size(); ++i) local[comps[ci][i]] = static_cast<int>(i);

    // cross-component arcs grouped by target component
    std::vector<std::vector<Arc>> entering(nc);
    for (auto [u, v] : g.arcs())
        if (comp_of[u] != comp_of[v]) entering[comp_of[v]].push_back({u, v});

    std::vector<Nat> M(g.n(), 0);
    for (int ci = 0; ci < nc; ++ci) {
        const auto& tbl = tables[ci];
        for (int v_global : comps[ci]) {
            int v = local[v_global];
            Nat best = 0;
            for (int u_global : comps[ci]) {
                int u = local[u_global];
                if (tbl[u][v] > best) best = tbl[u][v];
            }
            for (auto [u_global, w_global] : entering[ci]) {
                int w = local[w_global];
                if (tbl[w][v] == 0) continue;  // no certified (w,v)-walk
                if (M[u_global] == 0) continue;
                Nat cand = M[u_global] + tbl[w][v];
                if (cand > best) best = cand;
            }
            M[v_global] = best;
        }
    }
    for (int v = 0; v < g.n(); ++v)
        if (M[v] >= k) return true;
    return false;
}

std::pair<Digraph, Nat> gen_tightness_directed(int r) {
    if (r < 2) throw ValidationError("tightness construction needs r >= 2");
    // hub 0; cycle i uses vertices 1 + i*r .. 1 + i*r + (r-1); w_i after those
    int n = 1 + r * r + r;
    std::vector<Arc> arcs;
    auto cyc_v = [&](int i, int j) { return 1 + i * r + j; };
    for (int i = 0; i < r; ++i) {
        arcs.push_back({0, cyc_v(i, 0)});
        for (int j = 0; j + 1 < r; ++j) arcs.push_back({cyc_v(i, j), cyc_v(i, j + 1)});
        arcs.push_back({cyc_v(i, r - 1), 0});
        int w = 1 + r * r + i;
        arcs.push_back({cyc_v(i, 0), w});
        arcs.push_back({w, cyc_v(i, 0)});
    }
    Nat k_opt = Nat(3) * r * r - r;
    return {Digraph(n, std::move(arcs)), k_opt};
}

}  // namespace rsimple
