#include "rsimple/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "rsimple/errors.hpp"

namespace rsimple {

namespace {

// Every infinite upper bound is materialized as the sum of all finite bounds
// (plus the requested value, plus one), which no optimal flow can exceed.
Nat infinite_stand_in(const FlowNetwork& net, const Nat& extra) {
    Nat s = extra + 1;
    for (const auto& a : net.arcs) {
        s += a.lower;
        if (!a.infinite_upper) s += a.upper;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Dinic max-flow over exact capacities.

struct Dinic {
    struct E {
        int to, rev;
        Nat cap;
    };
    int n;
    std::vector<std::vector<E>> g;
    std::vector<int> level, it;

    explicit Dinic(int n) : n(n), g(n), level(n), it(n) {}

    int add(int u, int v, Nat cap) {
        g[u].push_back({v, static_cast<int>(g[v].size()), std::move(cap)});
        g[v].push_back({u, static_cast<int>(g[u].size()) - 1, Nat(0)});
        return static_cast<int>(g[u].size()) - 1;
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const auto& e : g[v])
                if (e.cap > 0 && level[e.to] < 0) {
                    level[e.to] = level[v] + 1;
                    q.push(e.to);
                }
        }
        return level[t] >= 0;
    }

    Nat dfs(int v, int t, Nat f) {
        if (v == t) return f;
        for (int& i = it[v]; i < static_cast<int>(g[v].size()); ++i) {
            E& e = g[v][i];
            if (e.cap > 0 && level[e.to] == level[v] + 1) {
                Nat d = dfs(e.to, t, std::min(f, e.cap));
                if (d > 0) {
                    e.cap -= d;
                    g[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    Nat run(int s, int t, const Nat& limit) {
        Nat flow = 0;
        while (flow < limit && bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            while (true) {
                Nat f = dfs(s, t, limit - flow);
                if (f == 0) break;
                flow += f;
                if (flow == limit) break;
            }
        }
        return flow;
    }
};

// ---------------------------------------------------------------------------
// Min-cost flow: successive shortest paths with capacity scaling.
// Costs stay machine integers; capacities and flow amounts are exact.

struct Mcmf {
    struct E {
        int to, rev;
        Nat cap;
        std::int64_t cost;
    };
    int n;
    std::vector<std::vector<E>> g;
    std::vector<Nat> excess;
    std::vector<std::int64_t> pot;

    explicit Mcmf(int n) : n(n), g(n), excess(n, Nat(0)), pot(n, 0) {}

    // Returns (node, index) handle; pushed flow is readable from the reverse cap.
    std::pair<int, int> add(int u, int v, Nat cap, std::int64_t cost) {
        g[u].push_back({v, static_cast<int>(g[v].size()), std::move(cap), cost});
        g[v].push_back({u, static_cast<int>(g[u].size()) - 1, Nat(0), -cost});
        return {u, static_cast<int>(g[u].size()) - 1};
    }

    Nat flow_on(const std::pair<int, int>& h) const {
        const E& e = g[h.first][h.second];
        return g[e.to][e.rev].cap;
    }

    // Routes all excesses at minimum cost; false when infeasible.
    bool solve() {
        Nat maxmag = 1;
        for (const auto& es : g)
            for (const auto& e : es)
                if (e.cap > maxmag) maxmag = e.cap;
        for (const auto& e : excess)
            if (abs(e) > maxmag) maxmag = abs(e);
        Nat delta = 1;
        while (delta * 2 <= maxmag) delta <<= 1;

        constexpr std::int64_t INF = std::numeric_limits<std::int64_t>::max() / 4;
        std::vector<std::int64_t> dist(n);
        std::vector<std::pair<int, int>> parent(n);  // (node, edge index)

        for (;; delta >>= 1) {
            // Restore reduced-cost optimality inside the delta-residual network.
            for (int u = 0; u < n; ++u)
                for (auto& e : g[u]) {
                    if (e.cap < delta) continue;
                    std::int64_t rc = e.cost + pot[u] - pot[e.to];
                    if (rc < 0) {
                        Nat amt = e.cap;
                        excess[u] -= amt;
                        excess[e.to] += amt;
                        g[e.to][e.rev].cap += amt;
                        e.cap = 0;
                    }
                }
            while (true) {
                int src = -1;
                for (int v = 0; v < n; ++v)
                    if (excess[v] >= delta) {
                        src = v;
                        break;
                    }
                if (src < 0) break;
                // Dijkstra over arcs with residual >= delta.
                std::fill(dist.begin(), dist.end(), INF);
                dist[src] = 0;
                using QE = std::pair<std::int64_t, int>;
                std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
                pq.push({0, src});
                while (!pq.empty()) {
                    auto [d, v] = pq.top();
                    pq.pop();
                    if (d != dist[v]) continue;
                    for (int i = 0; i < static_cast<int>(g[v].size()); ++i) {
                        const E& e = g[v][i];
                        if (e.cap < delta) continue;
                        std::int64_t nd = d + e.cost + pot[v] - pot[e.to];
                        if (nd < dist[e.to]) {
                            dist[e.to] = nd;
                            parent[e.to] = {v, i};
                            pq.push({nd, e.to});
                        }
                    }
                }
                int sink = -1;
                std::int64_t bestd = INF;
                for (int v = 0; v < n; ++v)
                    if (excess[v] <= -delta && dist[v] < bestd) {
                        bestd = dist[v];
                        sink = v;
                    }
                if (sink < 0) {
                    // src cannot reach any deficit in this scale; try next source
                    // by temporarily parking it: no other source can help either
                    // if none reaches a deficit, so scan all sources once.
                    bool progressed = false;
                    for (int k = 0; k < n && !progressed; ++k) {
                        if (excess[k] < delta || k == src) continue;
                        std::fill(dist.begin(), dist.end(), INF);
                        dist[k] = 0;
                        pq.push({0, k});
                        while (!pq.empty()) {
                            auto [d, v] = pq.top();
                            pq.pop();
                            if (d != dist[v]) continue;
                            for (int i = 0; i < static_cast<int>(g[v].size()); ++i) {
                                const E& e = g[v][i];
                                if (e.cap < delta) continue;
                                std::int64_t nd = d + e.cost + pot[v] - pot[e.to];
                                if (nd < dist[e.to]) {
                                    dist[e.to] = nd;
                                    parent[e.to] = {v, i};
                                    pq.push({nd, e.to});
                                }
                            }
                        }
                        for (int v = 0; v < n; ++v)
                            if (excess[v] <= -delta && dist[v] < INF) {
                                sink = v;
                                src = k;
                                bestd = dist[v];
                                progressed = true;
                                break;
                            }
                    }
                    if (!progressed) break;
                }
                // Potential update keeps reduced costs nonnegative.
                for (int v = 0; v < n; ++v) pot[v] += std::min(dist[v], bestd);
                // Augment delta along the path.
                for (int v = sink; v != src;) {
                    auto [pu, pi] = parent[v];
                    E& e = g[pu][pi];
                    e.cap -= delta;
                    g[v][e.rev].cap += delta;
                    v = pu;
                }
                excess[src] -= delta;
                excess[sink] += delta;
            }
            if (delta == 1) break;
        }
        for (const auto& e : excess)
            if (e != 0) return false;
        return true;
    }
};

struct Transformed {
    Mcmf engine;
    Nat base_cost = 0;
    // per original arc: handle + fixed offset + orientation
    struct Recover {
        std::pair<int, int> handle{-1, -1};
        Nat offset = 0;
        bool reversed = false;
    };
    std::vector<Recover> rec;

    explicit Transformed(int nodes) : engine(nodes) {}
};

// Lower bounds out, negative costs saturated; engine arcs all cost >= 0.
Transformed transform(const FlowNetwork& net, const Nat& inf_cap,
                      const std::vector<std::int64_t>& cost_override) {
    Transformed t(net.nodes);
    t.rec.resize(net.arcs.size());
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const FlowArc& a = net.arcs[i];
        Nat upper = a.infinite_upper ? inf_cap : a.upper;
        if (a.lower > upper) throw PreconditionViolated("lower bound above upper bound");
        std::int64_t cost = cost_override.empty() ? a.cost : cost_override[i];
        Nat cap = upper - a.lower;
        if (a.lower > 0) {
            t.engine.excess[a.to] += a.lower;
            t.engine.excess[a.from] -= a.lower;
            t.base_cost += Nat(cost) * a.lower;
        }
        t.rec[i].offset = a.lower;
        if (cap == 0) continue;
        if (cost >= 0) {
            t.rec[i].handle = t.engine.add(a.from, a.to, cap, cost);
        } else {
            // Saturate: send cap units, pay cost*cap, leave a reverse arc.
            t.engine.excess[a.to] += cap;
            t.engine.excess[a.from] -= cap;
            t.base_cost += Nat(cost) * cap;
            t.rec[i].handle = t.engine.add(a.to, a.from, cap, -cost);
            t.rec[i].reversed = true;
            t.rec[i].offset = a.lower + cap;
        }
    }
    return t;
}

std::vector<Nat> recover_flows(const Transformed& t) {
    std::vector<Nat> out(t.rec.size());
    for (std::size_t i = 0; i < t.rec.size(); ++i) {
        const auto& r = t.rec[i];
        if (r.handle.first < 0) {
            out[i] = r.offset;
        } else if (!r.reversed) {
            out[i] = r.offset + t.engine.flow_on(r.handle);
        } else {
            out[i] = r.offset - t.engine.flow_on(r.handle);
        }
    }
    return out;
}

Nat total_cost(const FlowNetwork& net, const std::vector<Nat>& flows,
               const std::vector<std::int64_t>& cost_override) {
    Nat c = 0;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        std::int64_t cost = cost_override.empty() ? net.arcs[i].cost : cost_override[i];
        c += Nat(cost) * flows[i];
    }
    return c;
}

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net, int s, int t) {
    for (const auto& a : net.arcs)
        if (a.lower != 0) throw PreconditionViolated("max_flow requires zero lower bounds");
    Nat inf_cap = infinite_stand_in(net, 0);
    Dinic d(net.nodes);
    std::vector<std::pair<int, int>> handles;
    handles.reserve(net.arcs.size());
    for (const auto& a : net.arcs) {
        Nat cap = a.infinite_upper ? inf_cap : a.upper;
        handles.push_back({a.from, d.add(a.from, a.to, cap)});
    }
    Nat limit = inf_cap;
    MaxFlowResult res;
    res.value = d.run(s, t, limit);
    res.flow.resize(net.arcs.size());
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const auto& [u, idx] = handles[i];
        const auto& e = d.g[u][idx];
        res.flow[i] = d.g[e.to][e.rev].cap;
    }
    return res;
}

std::optional<MinCostResult> min_cost_flow(const FlowNetwork& net, int s, int t, const Nat& F) {
    if (s == t) {
        if (F != 0) return std::nullopt;
    }
    FlowNetwork aug = net;
    if (s != t) aug.add(t, s, F, F, 0);  // forces value exactly F
    Nat inf_cap = infinite_stand_in(net, F);
    for (const auto& a : aug.arcs) {
        Nat upper = a.infinite_upper ? inf_cap : a.upper;
        if (a.lower > upper) return std::nullopt;
    }
    Transformed tr = transform(aug, inf_cap, {});
    if (!tr.engine.solve()) return std::nullopt;
    auto flows = recover_flows(tr);
    flows.resize(net.arcs.size());
    MinCostResult out;
    out.flow = flows;
    out.cost = total_cost(net, flows, {});
    return out;
}

std::optional<CirculationResult> max_value_circulation_with_lower_bounds(
    const FlowNetwork& net, const std::vector<int>& objective_arcs) {
    Nat inf_cap = infinite_stand_in(net, 0);
    for (const auto& a : net.arcs) {
        Nat upper = a.infinite_upper ? inf_cap : a.upper;
        if (a.lower > upper) return std::nullopt;
    }
    std::vector<std::int64_t> costs(net.arcs.size(), 0);
    for (int i : objective_arcs) costs[i] = -1;
    Transformed tr = transform(net, inf_cap, costs);
    if (!tr.engine.solve()) return std::nullopt;
    auto flows = recover_flows(tr);
    CirculationResult out;
    out.flow = flows;
    out.objective_total = 0;
    for (int i : objective_arcs) out.objective_total += flows[i];
    return out;
}

}  // namespace rsimple
