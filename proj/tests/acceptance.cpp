// Acceptance suite: oracle equivalence, extremal values, and exactness
// properties. One printed PASS/FAIL line per criterion.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <chrono>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "rsimple/directed.hpp"
#include "rsimple/flow.hpp"
#include "rsimple/oracle.hpp"
#include "rsimple/packing.hpp"
#include "rsimple/undirected.hpp"
#include "testutil.hpp"

using namespace rsimple;

namespace {

void report(int id, const char* name, bool pass, const std::string& detail = "",
            bool enforce = true) {
    std::printf("[criterion %2d] %-34s %s%s%s\n", id, name, pass ? "PASS" : "FAIL",
                detail.empty() ? "" : "  -- ", detail.c_str());
    std::fflush(stdout);
    if (enforce) CHECK_MESSAGE(pass, name << " " << detail);
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ColoredUGraph identity_colored(const UGraph& g) {
    ColoredUGraph c;
    c.g = g;
    c.col.c = std::max(g.n(), 1);
    c.col.color.resize(g.n());
    for (int v = 0; v < g.n(); ++v) c.col.color[v] = v + 1;
    return c;
}

}  // namespace

TEST_CASE("criterion 1: directed oracle equivalence") {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Digraph> graphs;
    for (int n = 1; n <= 3; ++n)
        for (auto& g : testutil::all_digraphs(n)) graphs.push_back(g);
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 200; ++i) graphs.push_back(testutil::random_digraph(4, 0.35, rng));

    long long checked = 0, disagreements = 0;
    for (const auto& g : graphs) {
        for (int r = 1; r <= 3; ++r) {
            DirectedCache cache;
            DirectedParams params;
            params.jobs = 0;
            for (int k = 1; k <= 10; ++k) {
                bool want = brute_rsimple_max(g, Nat(r), Nat(k)) >= k;
                bool got = solve_directed(g, Nat(k), Nat(r), params, &cache);
                ++checked;
                if (want != got) ++disagreements;
            }
        }
    }
    double secs = elapsed_s(t0);
    char detail[128];
    std::snprintf(detail, sizeof detail, "%lld checks, %lld disagreements, %.1fs", checked,
                  disagreements, secs);
    report(1, "directed oracle equivalence", disagreements == 0 && secs < 900.0, detail);
}

TEST_CASE("criterion 2: undirected general pipeline") {
    long long checked = 0, disagreements = 0;
    UndirectedParams params;
    params.pipeline = UndirectedPipeline::General;
    params.jobs = 0;
    for (int n = 1; n <= 4; ++n) {
        for (const auto& g : testutil::all_connected_ugraphs(n)) {
            for (int r = 2; r <= 3; ++r)
                for (int k = 1; k <= 10; ++k) {
                    bool want = brute_rsimple_max(g, Nat(r), Nat(k)) >= k;
                    bool got = solve_undirected(g, Nat(k), Nat(r), params);
                    ++checked;
                    if (want != got) ++disagreements;
                }
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "%lld checks, %lld disagreements", checked, disagreements);
    report(2, "undirected general pipeline", disagreements == 0, detail);
}

TEST_CASE("criterion 3: undirected special pipeline") {
    std::mt19937_64 rng(777);
    struct Inst {
        UGraph g;
        int r;
        long long k;
    };
    std::vector<Inst> corpus;
    while (corpus.size() < 100) {
        int n = 2 + static_cast<int>(rng() % 7);  // 2..8
        double p = 0.2 + 0.5 * (rng() % 100) / 100.0;
        UGraph g = testutil::random_connected_ugraph(n, p, rng);
        int r = 4 + static_cast<int>(rng() % 5);  // 4..8
        long long k = 2 + static_cast<long long>(rng() % (r * r - 2));
        corpus.push_back({g, r, k});
    }

    long long mism_deficit = 0, mism_double = 0, unsound_double = 0;
    for (const auto& in : corpus) {
        bool want = brute_rsimple_max(in.g, Nat(in.r), Nat(in.k)) >= in.k;
        UndirectedParams params;
        params.jobs = 0;
        params.edge_fit = EdgeFitVariant::Deficit;
        bool got = solve_undirected(in.g, Nat(in.k), Nat(in.r), params);
        if (got != want) ++mism_deficit;
        params.edge_fit = EdgeFitVariant::DoubleDeficit;
        bool got2 = solve_undirected(in.g, Nat(in.k), Nat(in.r), params);
        if (got2 != want) {
            ++mism_double;
            if (got2 && !want) ++unsound_double;  // would be a soundness break
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "deficit threshold: %lld mismatches; doubled threshold: %lld one-sided misses, "
                  "%lld unsound",
                  mism_deficit, mism_double, unsound_double);
    report(3, "undirected special pipeline", mism_deficit == 0 && unsound_double == 0, detail);
}

TEST_CASE("criterion 4: tightness boundaries") {
    // stated boundaries: yes at the closed form 3r^2-r, no one past it,
    // both confirmed by the oracle
    bool stated_ok = true, oracle_consistent = true;
    std::string detail;
    for (int r = 2; r <= 3; ++r) {
        auto [g, k_opt] = gen_tightness_directed(r);
        stated_ok = stated_ok && k_opt == (r == 2 ? 10 : 24);
        DirectedParams params;
        params.jobs = 0;
        DirectedCache cache;
        bool at_opt = solve_directed(g, k_opt, Nat(r), params, &cache);
        bool past_opt = solve_directed(g, k_opt + 1, Nat(r), params, &cache);
        bool past2 = solve_directed(g, k_opt + 2, Nat(r), params, &cache);
        Nat omax = brute_rsimple_max(g, Nat(r), k_opt + 3);
        stated_ok = stated_ok && at_opt && !past_opt && omax == k_opt;
        // independent of the stated values, the solver must match the oracle
        oracle_consistent = oracle_consistent && at_opt == (omax >= k_opt) &&
                            past_opt == (omax >= k_opt + 1) && past2 == (omax >= k_opt + 2);
        char buf[96];
        std::snprintf(buf, sizeof buf, "%sr=%d: stated boundary %lld/%lld, oracle max %s", r == 2 ? "" : "; ",
                      r, static_cast<long long>(k_opt), static_cast<long long>(k_opt) + 1,
                      to_decimal(omax).c_str());
        detail += buf;
    }
    // The stated no-boundary is refuted by the oracle itself: a walk that
    // starts and ends inside two pendant 2-cycles tops the closed form by one
    // (for r=2: w0,v1,v2,u,v1',w1,v1',v2',u,v1,w0). The criterion line reports
    // the stated claim; the enforced requirement is solver/oracle agreement.
    report(4, "tightness construction", stated_ok,
           detail + (oracle_consistent ? " (solver agrees with oracle at all boundaries)"
                                       : " (SOLVER/ORACLE DISAGREEMENT)"),
           /*enforce=*/false);
    CHECK(oracle_consistent);
}

TEST_CASE("criterion 5: huge-r smoke test") {
    Digraph c3(3, {{0, 1}, {1, 2}, {2, 0}});
    Nat r = parse_nat("1000000000000");
    DirectedParams params;
    params.jobs = 0;
    auto t0 = std::chrono::steady_clock::now();
    bool yes = solve_directed(c3, 3 * r, r, params);
    double s1 = elapsed_s(t0);
    t0 = std::chrono::steady_clock::now();
    bool no = solve_directed(c3, 3 * r + 1, r, params);
    double s2 = elapsed_s(t0);
    char detail[96];
    std::snprintf(detail, sizeof detail, "k=3r: %.2fs, k=3r+1: %.2fs", s1, s2);
    report(5, "huge-r smoke test", yes && !no && s1 < 60.0 && s2 < 60.0, detail);
}

namespace {

std::optional<long long> brute_enrich_acc(const Topology& T, long long r, int i, int j) {
    auto has_color = [&](int c) {
        return std::binary_search(T.colors.begin(), T.colors.end(), c);
    };
    if (!has_color(i) || !has_color(j) || T.arcs.empty()) return std::nullopt;
    std::size_t m = T.arcs.size();
    std::vector<long long> phi(m, 1);
    std::optional<long long> best;
    std::function<void(std::size_t)> rec = [&](std::size_t a) {
        if (a == m) {
            std::map<int, long long> din, dout;
            for (int c : T.colors) din[c] = dout[c] = 0;
            long long total = 0;
            for (std::size_t e = 0; e < m; ++e) {
                dout[T.arcs[e].first] += phi[e];
                din[T.arcs[e].second] += phi[e];
                total += phi[e];
            }
            for (int c : T.colors) {
                if (c == i) {
                    if (dout[c] != din[c] + 1 || dout[c] > r) return;
                } else if (c == j) {
                    if (din[c] != dout[c] + 1 || din[c] > r) return;
                } else {
                    if (dout[c] != din[c] || din[c] > r) return;
                }
            }
            if (!best || total > *best) best = total;
            return;
        }
        for (long long v = 1; v <= r; ++v) {
            phi[a] = v;
            rec(a + 1);
        }
    };
    rec(0);
    return best;
}

Topology random_topology_acc(std::mt19937_64& rng) {
    int c = 2 + static_cast<int>(rng() % 3);
    std::set<std::pair<int, int>> arcs;
    std::vector<int> touched{1};
    int want = 1 + static_cast<int>(rng() % 4);
    int guard = 0;
    while (static_cast<int>(arcs.size()) < want && ++guard < 100) {
        int a = touched[rng() % touched.size()];
        int b = 1 + static_cast<int>(rng() % c);
        if (a == b) continue;
        if (rng() & 1) std::swap(a, b);
        if (arcs.insert({a, b}).second) {
            touched.push_back(a);
            touched.push_back(b);
        }
    }
    Topology t;
    std::set<int> cols;
    for (auto& [a, b] : arcs) {
        cols.insert(a);
        cols.insert(b);
        t.arcs.push_back({a, b});
    }
    std::sort(t.arcs.begin(), t.arcs.end());
    t.colors.assign(cols.begin(), cols.end());
    return t;
}

}  // namespace

TEST_CASE("criterion 6: enrichment optimality") {
    std::mt19937_64 rng(606);
    int done = 0;
    long long mism = 0;
    while (done < 100) {
        Topology t = random_topology_acc(rng);
        long long r = 1 + static_cast<long long>(rng() % 5);
        int i = t.colors[rng() % t.colors.size()];
        int j = t.colors[rng() % t.colors.size()];
        if (i == j) continue;
        auto got = enrich(t, Nat(r), i, j);
        auto want = brute_enrich_acc(t, r, i, j);
        if (got.has_value() != want.has_value())
            ++mism;
        else if (got && Nat(*want) != got->total)
            ++mism;
        ++done;
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "100 topologies, %lld mismatches", mism);
    report(6, "enrichment optimality", mism == 0, detail);
}

TEST_CASE("criterion 7: flow module") {
    std::mt19937_64 rng(707);
    long long mism = 0;
    int done = 0;
    while (done < 100) {
        int n = 2 + static_cast<int>(rng() % 5);
        int m_arcs = 1 + static_cast<int>(rng() % 7);
        FlowNetwork net;
        net.nodes = n;
        for (int i = 0; i < m_arcs; ++i) {
            int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
            if (u == v) v = (v + 1) % n;
            long long hi = static_cast<long long>(rng() % 7);
            net.add(u, v, 0, hi, static_cast<long long>(rng() % 4));
        }
        long long F = static_cast<long long>(rng() % 6);
        // exhaustive reference
        std::optional<long long> want;
        {
            std::vector<long long> f(net.arcs.size(), 0);
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == net.arcs.size()) {
                    std::vector<long long> bal(n, 0);
                    long long cost = 0;
                    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
                        bal[net.arcs[a].from] -= f[a];
                        bal[net.arcs[a].to] += f[a];
                        cost += f[a] * net.arcs[a].cost;
                    }
                    if (bal[n - 1] != F || bal[0] != -F) return;
                    for (int v = 1; v + 1 < n; ++v)
                        if (bal[v] != 0) return;
                    if (!want || cost < *want) want = cost;
                    return;
                }
                for (long long v = 0; v <= static_cast<long long>(net.arcs[i].upper); ++v) {
                    f[i] = v;
                    rec(i + 1);
                }
            };
            rec(0);
        }
        auto got = min_cost_flow(net, 0, n - 1, Nat(F));
        if (want.has_value() != got.has_value())
            ++mism;
        else if (got) {
            if (got->cost != Nat(*want)) ++mism;
            std::vector<Nat> bal(n, 0);
            for (std::size_t a = 0; a < net.arcs.size(); ++a) {
                if (got->flow[a] > net.arcs[a].upper || got->flow[a] < 0) ++mism;
                bal[net.arcs[a].from] -= got->flow[a];
                bal[net.arcs[a].to] += got->flow[a];
            }
            for (int v = 0; v < n; ++v) {
                Nat expect = v == 0 ? -Nat(F) : (v == n - 1 ? Nat(F) : Nat(0));
                if (bal[v] != expect) ++mism;
            }
        }
        ++done;
    }
    // huge capacities stay fast
    auto t0 = std::chrono::steady_clock::now();
    FlowNetwork big;
    big.nodes = 2;
    big.add(0, 1, 0, parse_nat("1000000000000000"), 2);
    auto r2 = min_cost_flow(big, 0, 1, parse_nat("999999999999999"));
    double secs = elapsed_s(t0);
    bool big_ok = r2 && r2->cost == parse_nat("1999999999999998") && secs < 1.0;
    char detail[96];
    std::snprintf(detail, sizeof detail, "100 networks, %lld mismatches, capacity 1e15 in %.3fs",
                  mism, secs);
    report(7, "flow module", mism == 0 && big_ok, detail);
}

TEST_CASE("criterion 8: edge-fit equals brute force") {
    long long mism = 0, checked = 0;
    for (int n = 1; n <= 4; ++n) {
        for (const auto& g : testutil::all_connected_ugraphs(n)) {
            auto gc = identity_colored(g);
            std::vector<int> active;
            for (int v = 0; v < n; ++v) active.push_back(v + 1);
            for (int r = 1; r <= 3; ++r) {
                std::vector<std::int64_t> d(n, 0);
                std::function<void(int)> loop_d = [&](int pos) {
                    if (pos == n) {
                        long long sum_d = 0;
                        for (auto x : d) sum_d += x;
                        // brute max even phi within caps
                        const auto& edges = g.edges();
                        std::vector<long long> phi(edges.size(), 0);
                        long long best = -1;
                        std::function<void(std::size_t)> rec = [&](std::size_t i) {
                            if (i == edges.size()) {
                                std::vector<long long> deg(n, 0);
                                long long total = 0;
                                for (std::size_t e = 0; e < edges.size(); ++e) {
                                    deg[edges[e].first] += phi[e];
                                    deg[edges[e].second] += phi[e];
                                    total += phi[e];
                                }
                                for (int v = 0; v < n; ++v)
                                    if (deg[v] % 2 != 0 || deg[v] > 2 * (r - d[v])) return;
                                best = std::max(best, total);
                                return;
                            }
                            for (long long x = 0; x <= 2 * r; ++x) {
                                phi[i] = x;
                                rec(i + 1);
                            }
                            phi[i] = 0;
                        };
                        rec(0);
                        for (long long k = 1; k <= 2 * n * r + 1; ++k) {
                            FitSpec spec;
                            spec.g = &gc;
                            spec.active = active;
                            spec.dbar.d = d;
                            spec.r = r;
                            spec.k = k;
                            spec.variant = EdgeFitVariant::Deficit;
                            bool want = best >= 0 && sum_d + best >= k;
                            if (edge_fit_exists(spec) != want) ++mism;
                            ++checked;
                        }
                        return;
                    }
                    for (d[pos] = 0; d[pos] <= r; ++d[pos]) loop_d(pos + 1);
                    d[pos] = 0;
                };
                loop_d(0);
            }
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "%lld checks, %lld mismatches (deficit threshold)",
                  checked, mism);
    report(8, "edge-fit vs brute force", mism == 0, detail);
}

namespace {

bool tw_at_most_2(std::set<std::pair<int, int>> edges) {
    std::set<int> alive;
    for (auto& [u, v] : edges) {
        alive.insert(u);
        alive.insert(v);
    }
    while (!alive.empty()) {
        int pick = -1;
        for (int v : alive) {
            int deg = 0;
            for (auto& [a, b] : edges)
                if (a == v || b == v) ++deg;
            if (deg <= 2) {
                pick = v;
                break;
            }
        }
        if (pick < 0) return false;
        std::vector<int> nb;
        for (auto it = edges.begin(); it != edges.end();) {
            if (it->first == pick || it->second == pick) {
                nb.push_back(it->first == pick ? it->second : it->first);
                it = edges.erase(it);
            } else {
                ++it;
            }
        }
        if (nb.size() == 2 && nb[0] != nb[1])
            edges.insert({std::min(nb[0], nb[1]), std::max(nb[0], nb[1])});
        alive.erase(pick);
    }
    return true;
}

std::optional<long long> brute_tw2_acc(const ColoredUGraph& g, const std::set<int>& cset,
                                       int v_star, const std::vector<std::int64_t>& caps) {
    const auto& edges = g.g.edges();
    std::vector<long long> mult(edges.size(), 0);
    std::optional<long long> best;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == edges.size()) {
            std::vector<long long> deg(g.g.n(), 0);
            std::set<int> verts, used_colors;
            std::set<std::pair<int, int>> support;
            long long total = 0;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (mult[e] == 0) continue;
                auto [u, v] = edges[e];
                deg[u] += mult[e];
                deg[v] += mult[e];
                verts.insert(u);
                verts.insert(v);
                support.insert({u, v});
                total += mult[e];
            }
            if (verts.empty()) {
                if (cset.count(g.col.color[v_star])) {
                    if (!best || 0 > *best) best = 0;
                }
                return;
            }
            if (!verts.count(v_star)) return;
            for (int v : verts) {
                int c = g.col.color[v];
                if (!cset.count(c)) return;
                if (!used_colors.insert(c).second) return;
                if (deg[v] % 2 != 0 || deg[v] > caps[v]) return;
            }
            std::map<int, std::vector<int>> adj;
            for (auto& [u, v] : support) {
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
            std::set<int> seen{*verts.begin()};
            std::vector<int> stack{*verts.begin()};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : adj[v])
                    if (seen.insert(w).second) stack.push_back(w);
            }
            if (seen.size() != verts.size()) return;
            if (!tw_at_most_2(support)) return;
            if (!best || total > *best) best = total;
            return;
        }
        auto [u, v] = edges[i];
        long long lim = std::min(caps[u], caps[v]);
        for (long long x = 0; x <= lim; ++x) {
            mult[i] = x;
            rec(i + 1);
        }
        mult[i] = 0;
    };
    rec(0);
    return best;
}

}  // namespace

TEST_CASE("criterion 9: treewidth-2 component DP") {
    long long mism = 0, checked = 0;
    std::mt19937_64 rng(909);
    for (int n = 1; n <= 4; ++n) {
        // all graphs on n vertices (not only connected): enumerate edge masks
        int m = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
            UGraph g = testutil::ugraph_from_mask(n, mask);
            auto gc = identity_colored(g);
            std::vector<int> active;
            for (int v = 0; v < n; ++v) active.push_back(v + 1);
            for (int r = 1; r <= 2; ++r) {
                for (int trial = 0; trial < 3; ++trial) {
                    OccurrenceSequence d;
                    d.d.assign(n, 0);
                    if (trial > 0)
                        for (auto& x : d.d) x = static_cast<std::int64_t>(rng() % (r + 1));
                    int v_star = static_cast<int>(rng() % n);
                    std::set<int> cset;
                    cset.insert(gc.col.color[v_star]);
                    for (int v = 0; v < n; ++v)
                        if (trial == 0 || (rng() & 1)) cset.insert(v + 1);
                    std::vector<int> C(cset.begin(), cset.end());
                    auto got = tw2_component_max(gc, C, v_star, d, active, Nat(r));
                    std::vector<std::int64_t> caps(n);
                    for (int v = 0; v < n; ++v) caps[v] = 2 * (r - d.d[v]);
                    auto want = brute_tw2_acc(gc, cset, v_star, caps);
                    ++checked;
                    if (got.has_value() != want.has_value())
                        ++mism;
                    else if (got && *got != *want)
                        ++mism;
                }
            }
        }
    }
    // the pinned triangle value
    UGraph tri(3, {{0, 1}, {0, 2}, {1, 2}});
    auto gc = identity_colored(tri);
    OccurrenceSequence zero;
    zero.d = {0, 0, 0};
    auto tri_val = tw2_component_max(gc, {1, 2, 3}, 0, zero, {1, 2, 3}, Nat(2));
    bool tri_ok = tri_val && *tri_val == 6;
    char detail[96];
    std::snprintf(detail, sizeof detail, "%lld checks, %lld mismatches, triangle=%lld", checked,
                  mism, tri_val ? *tri_val : -1);
    report(9, "treewidth-2 component DP", mism == 0 && tri_ok, detail);
}

TEST_CASE("criterion 10: packing rules and solver") {
    std::mt19937_64 rng(1010);
    long long mism = 0, bound_violations = 0;
    for (int it = 0; it < 200; ++it) {
        PackingInstance inst;
        inst.universe = 2 + static_cast<int>(rng() % 7);
        inst.p = 1 + static_cast<int>(rng() % 3);
        inst.q = 1 + static_cast<int>(rng() % 5);
        inst.r = 1 + static_cast<int>(rng() % 3);
        int m = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < m; ++i) {
            int sz = 1 + static_cast<int>(rng() % std::min(inst.p, inst.universe));
            std::set<int> s;
            while (static_cast<int>(s.size()) < sz)
                s.insert(static_cast<int>(rng() % inst.universe));
            inst.sets.emplace_back(s.begin(), s.end());
            inst.mult.push_back(Nat(1));
        }
        std::vector<std::vector<int>> copies = inst.sets;
        bool want = brute_packing(inst.universe, copies, inst.q, inst.r);

        PackingInstance r1 = rule1(inst);
        if (r1.q <= 0) {
            if (!want) ++mism;
        } else {
            std::vector<std::vector<int>> copies1;
            for (std::size_t i = 0; i < r1.sets.size(); ++i)
                for (Nat c = 0; c < r1.mult[i]; ++c) copies1.push_back(r1.sets[i]);
            if (brute_packing(r1.universe, copies1, r1.q, r1.r) != want) ++mism;
            auto kap = to_int64(inst.kappa());
            if (kap && *kap <= 12) {
                PackingInstance r2v = rule2(r1, static_cast<int>(*kap));
                std::vector<std::vector<int>> copies2;
                for (std::size_t i = 0; i < r2v.sets.size(); ++i)
                    for (Nat c = 0; c < r2v.mult[i]; ++c) copies2.push_back(r2v.sets[i]);
                if (brute_packing(r2v.universe, copies2, r2v.q, r2v.r) != want) ++mism;
                std::set<int> elems;
                for (const auto& s : r2v.sets) elems.insert(s.begin(), s.end());
                Nat limit = *kap == 0 ? Nat(1) : Nat(*kap) * (Nat(1) << (2 * (*kap)));
                if (!(Nat(static_cast<long long>(elems.size())) < limit ||
                      (elems.empty() && *kap == 0)))
                    ++bound_violations;
            }
        }
        if (solve_packing(inst) != want) ++mism;
    }

    // exhaustive representative property
    long long rep_fail = 0;
    std::mt19937_64 rng2(1011);
    for (int it = 0; it < 40; ++it) {
        int universe = 3 + static_cast<int>(rng2() % 6);
        int p = 1 + static_cast<int>(rng2() % 3);
        int kappa = static_cast<int>(rng2() % 4);
        std::vector<std::vector<int>> fam;
        int m = 1 + static_cast<int>(rng2() % 10);
        for (int i = 0; i < m; ++i) {
            std::set<int> s;
            while (static_cast<int>(s.size()) < p) s.insert(static_cast<int>(rng2() % universe));
            fam.emplace_back(s.begin(), s.end());
        }
        auto cert = representative_family(fam, p, kappa, universe);
        if (Nat(static_cast<long long>(cert.selected.size())) > cert.bound) ++rep_fail;
        std::set<int> sel(cert.selected.begin(), cert.selected.end());
        std::vector<int> b;
        std::function<bool(int, int)> rec = [&](int start, int remaining) {
            auto dis = [&](bool only_sel) {
                for (std::size_t i = 0; i < fam.size(); ++i) {
                    if (only_sel && !sel.count(static_cast<int>(i))) continue;
                    bool ok = true;
                    for (int e : fam[i])
                        if (std::find(b.begin(), b.end(), e) != b.end()) ok = false;
                    if (ok) return true;
                }
                return false;
            };
            if (dis(false) != dis(true)) return false;
            if (remaining == 0) return true;
            for (int e = start; e < universe; ++e) {
                b.push_back(e);
                if (!rec(e + 1, remaining - 1)) return false;
                b.pop_back();
            }
            return true;
        };
        if (!rec(0, kappa)) ++rep_fail;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "200 instances, %lld mismatches, %lld ground-set bound violations, %lld "
                  "representative failures",
                  mism, bound_violations, rep_fail);
    report(10, "packing rules and solver", mism == 0 && bound_violations == 0 && rep_fail == 0,
           detail);
}

TEST_CASE("criterion 11: euler machinery") {
    std::mt19937_64 rng(1111);
    long long fails = 0;
    for (int it = 0; it < 500; ++it) {
        bool directed = (it % 2) == 0;
        int n = 2 + static_cast<int>(rng() % 6);
        int len = 1 + static_cast<int>(rng() % 60);
        long long scale = 1 + static_cast<long long>(rng() % 160);  // total <= 10^4
        std::vector<int> walk{static_cast<int>(rng() % n)};
        for (int i = 0; i < len; ++i) {
            int nx = static_cast<int>(rng() % n);
            if (nx == walk.back()) nx = (nx + 1) % n;
            walk.push_back(nx);
        }
        bool closed = (rng() & 1) != 0;
        if (closed && walk.back() != walk.front()) {
            if (walk[walk.size() - 2] == walk.front())
                walk.pop_back();
            else
                walk.push_back(walk.front());
        }
        if (directed) {
            MultiDigraph m;
            m.n = n;
            std::map<Arc, Nat> want;
            for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
                // closed trails can be repeated `scale` times
                Nat mul = walk.front() == walk.back() ? Nat(scale) : Nat(1);
                m.add(walk[i], walk[i + 1], mul);
                want[{walk[i], walk[i + 1]}] += mul;
            }
            if (m.mult.empty()) continue;
            int s = walk.front(), t = walk.back();
            if (!euler_trail_exists(m, s, t)) {
                ++fails;
                continue;
            }
            auto w = euler_trail_construct(m, s, t, Nat(20000));
            if (!w) {
                ++fails;
                continue;
            }
            Nat big = parse_nat("1000000000000");
            auto chk = verify_walk(Digraph(n, [&] {
                                       std::vector<Arc> arcs;
                                       for (auto& [a, mm] : m.mult) arcs.push_back(a);
                                       return arcs;
                                   }()),
                                   *w, big);
            if (!chk.valid) ++fails;
            std::map<Arc, Nat> got;
            for (std::size_t i = 0; i + 1 < w->vertices.size(); ++i)
                got[{w->vertices[i], w->vertices[i + 1]}] += 1;
            if (got != want) ++fails;
            // independent degree-condition check
            std::vector<long long> din(n, 0), dout(n, 0);
            for (auto& [a, mm] : m.mult) {
                dout[a.first] += static_cast<long long>(mm);
                din[a.second] += static_cast<long long>(mm);
            }
            bool degree_ok = true;
            for (int v = 0; v < n; ++v) {
                long long expect = 0;
                if (s != t && v == s) expect = 1;
                if (s != t && v == t) expect = -1;
                if (dout[v] - din[v] != expect) degree_ok = false;
            }
            if (!degree_ok) ++fails;
        } else {
            MultiUGraph m;
            m.n = n;
            std::map<Edge, Nat> want;
            for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
                Nat mul = walk.front() == walk.back() ? Nat(scale) : Nat(1);
                m.add(walk[i], walk[i + 1], mul);
                int a = std::min(walk[i], walk[i + 1]), b = std::max(walk[i], walk[i + 1]);
                want[{a, b}] += mul;
            }
            if (m.mult.empty()) continue;
            int s = walk.front(), t = walk.back();
            if (!euler_trail_exists_undirected(m, s, t)) {
                ++fails;
                continue;
            }
            auto w = euler_trail_construct(m, s, t, Nat(20000));
            if (!w) {
                ++fails;
                continue;
            }
            std::map<Edge, Nat> got;
            for (std::size_t i = 0; i + 1 < w->vertices.size(); ++i) {
                int a = std::min(w->vertices[i], w->vertices[i + 1]);
                int b = std::max(w->vertices[i], w->vertices[i + 1]);
                got[{a, b}] += 1;
            }
            if (got != want) ++fails;
            std::vector<long long> deg(n, 0);
            for (auto& [e, mm] : m.mult) {
                deg[e.first] += static_cast<long long>(mm);
                deg[e.second] += static_cast<long long>(mm);
            }
            for (int v = 0; v < n; ++v) {
                bool odd = (deg[v] % 2) != 0;
                bool should = (s != t) && (v == s || v == t);
                if (odd != should) ++fails;
            }
        }
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "500 multigraphs, %lld failures", fails);
    report(11, "euler machinery", fails == 0, detail);
}

TEST_CASE("criterion 12: matching shortcut guarantee") {
    std::mt19937_64 rng(1212);
    long long fails = 0;
    int done = 0;
    while (done < 50) {
        int n = 4 + static_cast<int>(rng() % 7);  // 4..10
        UGraph g = testutil::random_connected_ugraph(n, 0.25, rng);
        auto matching = maximal_matching(g);
        if (matching.empty()) continue;
        int r = 2 + static_cast<int>(rng() % 3);  // 2..4
        long long msize = static_cast<long long>(matching.size());
        long long k = std::min<long long>(r * msize, 16);
        if (k < 2) continue;
        // ceil(k/r) <= |matching| by construction
        auto ms = matching_shortcut(g, Nat(k), Nat(r));
        if (!ms.yes) {
            ++fails;
            ++done;
            continue;
        }
        if (brute_rsimple_max(g, Nat(r), Nat(k)) < k) ++fails;
        ++done;
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "50 instances, %lld failures", fails);
    report(12, "matching shortcut guarantee", fails == 0, detail);
}
