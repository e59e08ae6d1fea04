#include "rsimple/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "rsimple/errors.hpp"

namespace rsimple {

namespace {

using u64 = std::uint64_t;

struct StateSpace {
    int n;
    std::int64_t clamp;        // max stored count per vertex
    u64 base;                  // clamp + 1
    std::vector<u64> weight;   // base^v
    u64 counts_span;           // base^n
    std::vector<u64> visited;  // bitset over n * counts_span

    bool test_and_set(u64 idx) {
        u64 word = idx >> 6, bit = idx & 63;
        if (visited[word] & (1ull << bit)) return true;
        visited[word] |= 1ull << bit;
        return false;
    }
};

StateSpace make_space(int n, const Nat& r, const Nat& cap, const OracleBudget& budget) {
    Nat clamp_nat = r < cap ? r : cap;
    StateSpace sp;
    sp.n = n;
    Nat bits = Nat(n);
    Nat base = clamp_nat + 1;
    for (int i = 0; i < n; ++i) {
        bits *= base;
        if (bits > budget.states) throw BudgetExceeded("visit-state space exceeds oracle budget");
    }
    auto clamp64 = to_int64(clamp_nat);
    if (!clamp64) throw BudgetExceeded("visit count clamp does not fit a machine word");
    sp.clamp = *clamp64;
    sp.base = static_cast<u64>(sp.clamp) + 1;
    sp.weight.resize(n);
    u64 w = 1;
    for (int v = 0; v < n; ++v) {
        sp.weight[v] = w;
        w *= sp.base;
    }
    sp.counts_span = w;
    u64 total = sp.counts_span * static_cast<u64>(n);
    sp.visited.assign((total + 63) / 64, 0);
    return sp;
}

inline u64 encode(const StateSpace& sp, int cur, u64 counts) {
    return static_cast<u64>(cur) * sp.counts_span + counts;
}

inline int digit(const StateSpace& sp, u64 counts, int v) {
    return static_cast<int>((counts / sp.weight[v]) % sp.base);
}

// Core search: graded BFS over visit states. Starts from the given seed
// states (level 1), runs until the frontier empties or level == cap.
// best_end[t] records the highest level at which a state with current
// vertex t was seen.
struct SearchResult {
    std::int64_t max_level = 0;
    std::vector<std::int64_t> best_end;  // per end vertex
    std::vector<u64> best_end_state;
};

SearchResult graded_search(const Digraph& g, StateSpace& sp, const std::vector<int>& starts,
                           const Nat& cap) {
    SearchResult res;
    res.best_end.assign(g.n(), 0);
    res.best_end_state.assign(g.n(), 0);
    std::vector<u64> frontier, next;
    for (int v : starts) {
        u64 counts = sp.weight[v];
        u64 idx = encode(sp, v, counts);
        if (!sp.test_and_set(idx)) frontier.push_back(idx);
    }
    std::int64_t level = frontier.empty() ? 0 : 1;
    for (u64 st : frontier) {
        int v = static_cast<int>(st / sp.counts_span);
        if (res.best_end[v] < 1) {
            res.best_end[v] = 1;
            res.best_end_state[v] = st;
        }
    }
    res.max_level = level;
    while (!frontier.empty() && Nat(level) < cap) {
        next.clear();
        for (u64 st : frontier) {
            int cur = static_cast<int>(st / sp.counts_span);
            u64 counts = st % sp.counts_span;
            for (int u : g.out(cur)) {
                if (digit(sp, counts, u) >= sp.clamp) continue;
                u64 nidx = encode(sp, u, counts + sp.weight[u]);
                if (!sp.test_and_set(nidx)) next.push_back(nidx);
            }
        }
        if (next.empty()) break;
        ++level;
        for (u64 st : next) {
            int v = static_cast<int>(st / sp.counts_span);
            if (res.best_end[v] < level) {
                res.best_end[v] = level;
                res.best_end_state[v] = st;
            }
        }
        res.max_level = level;
        frontier.swap(next);
    }
    return res;
}

// Rebuild a walk ending at `state` by stepping to visited predecessors.
Walk backtrack(const Digraph& g, const StateSpace& sp, u64 state, std::int64_t level) {
    std::vector<int> rev;
    u64 st = state;
    for (std::int64_t l = level; l >= 1; --l) {
        int cur = static_cast<int>(st / sp.counts_span);
        u64 counts = st % sp.counts_span;
        rev.push_back(cur);
        if (l == 1) break;
        u64 prev_counts = counts - sp.weight[cur];
        bool found = false;
        for (int u : g.in(cur)) {
            if (digit(sp, prev_counts, u) == 0) continue;
            u64 pidx = encode(sp, u, prev_counts);
            u64 word = pidx >> 6, bit = pidx & 63;
            if (sp.visited[word] & (1ull << bit)) {
                st = pidx;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("oracle backtrack lost the trail");
    }
    std::reverse(rev.begin(), rev.end());
    return Walk{std::move(rev)};
}

Nat max_impl(const Digraph& g, const Nat& r, const Nat& cap, const OracleBudget& budget,
             Walk* witness) {
    if (g.n() == 0 || cap == 0) return 0;
    if (r == 0) return 0;
    StateSpace sp = make_space(g.n(), r, cap, budget);
    std::vector<int> starts(g.n());
    for (int v = 0; v < g.n(); ++v) starts[v] = v;
    SearchResult res = graded_search(g, sp, starts, cap);
    if (witness && res.max_level > 0) {
        int best_v = 0;
        for (int v = 0; v < g.n(); ++v)
            if (res.best_end[v] > res.best_end[best_v]) best_v = v;
        *witness = backtrack(g, sp, res.best_end_state[best_v], res.best_end[best_v]);
    }
    return Nat(res.max_level);
}

std::optional<Nat> st_impl(const Digraph& g, const Nat& r, int s, int t, const Nat& cap,
                           const OracleBudget& budget, Walk* witness) {
    if (s < 0 || s >= g.n() || t < 0 || t >= g.n()) throw ValidationError("endpoint out of range");
    if (cap == 0 || r == 0) return std::nullopt;
    StateSpace sp = make_space(g.n(), r, cap, budget);
    SearchResult res = graded_search(g, sp, {s}, cap);
    if (res.best_end[t] == 0) return std::nullopt;
    if (witness) *witness = backtrack(g, sp, res.best_end_state[t], res.best_end[t]);
    return Nat(res.best_end[t]);
}

}  // namespace

Nat brute_rsimple_max(const Digraph& g, const Nat& r, const Nat& cap, const OracleBudget& budget,
                      Walk* witness) {
    return max_impl(g, r, cap, budget, witness);
}

Nat brute_rsimple_max(const UGraph& g, const Nat& r, const Nat& cap, const OracleBudget& budget,
                      Walk* witness) {
    return max_impl(g.bidirected(), r, cap, budget, witness);
}

std::optional<Nat> brute_rsimple_st_max(const Digraph& g, const Nat& r, int s, int t, const Nat& cap,
                                        const OracleBudget& budget, Walk* witness) {
    return st_impl(g, r, s, t, cap, budget, witness);
}

std::optional<Nat> brute_rsimple_st_max(const UGraph& g, const Nat& r, int s, int t, const Nat& cap,
                                        const OracleBudget& budget, Walk* witness) {
    return st_impl(g.bidirected(), r, s, t, cap, budget, witness);
}

std::vector<std::optional<Nat>> brute_rsimple_st_row(const Digraph& g, const Nat& r, int s,
                                                     const Nat& cap, const OracleBudget& budget) {
    std::vector<std::optional<Nat>> row(g.n());
    if (g.n() == 0 || cap == 0 || r == 0) return row;
    StateSpace sp = make_space(g.n(), r, cap, budget);
    SearchResult res = graded_search(g, sp, {s}, cap);
    for (int t = 0; t < g.n(); ++t)
        if (res.best_end[t] > 0) row[t] = Nat(res.best_end[t]);
    return row;
}

namespace {

template <class G>
WalkCheck verify_impl(const G& g, const Walk& w, const Nat& r, bool directed) {
    WalkCheck out;
    out.size = Nat(w.vertices.size());
    if (w.vertices.empty()) return out;
    std::vector<Nat> count(g.n(), 0);
    for (std::size_t i = 0; i < w.vertices.size(); ++i) {
        int v = w.vertices[i];
        if (v < 0 || v >= g.n()) return out;
        count[v] += 1;
        if (count[v] > r) return out;
        if (i > 0) {
            int u = w.vertices[i - 1];
            bool ok;
            if constexpr (std::is_same_v<G, Digraph>)
                ok = g.has_arc(u, v);
            else
                ok = g.has_edge(u, v);
            if (!ok) return out;
        }
    }
    (void)directed;
    out.valid = true;
    return out;
}

}  // namespace

WalkCheck verify_walk(const Digraph& g, const Walk& w, const Nat& r) {
    return verify_impl(g, w, r, true);
}

WalkCheck verify_walk(const UGraph& g, const Walk& w, const Nat& r) {
    return verify_impl(g, w, r, false);
}

bool brute_packing(int universe, const std::vector<std::vector<int>>& sets, const Nat& q,
                   const Nat& r, const Nat& budget) {
    if (q <= 0) return true;
    int m = static_cast<int>(sets.size());
    if (Nat(m) < q) return false;
    auto q64 = to_int64(q);
    if (!q64) return false;  // q > m already handled; q fits if it is <= m
    int qq = static_cast<int>(*q64);

    Nat combos = 1;
    for (int i = 0; i < qq; ++i) {
        combos = combos * (m - i) / (i + 1);
        if (combos > budget) throw BudgetExceeded("C(|H|, q) exceeds packing oracle budget");
    }

    std::vector<int> idx(qq);
    for (int i = 0; i < qq; ++i) idx[i] = i;
    std::vector<Nat> occ(universe, 0);
    while (true) {
        std::fill(occ.begin(), occ.end(), Nat(0));
        bool ok = true;
        for (int i : idx) {
            for (int e : sets[i]) {
                occ[e] += 1;
                if (occ[e] > r) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) return true;
        int i = qq - 1;
        while (i >= 0 && idx[i] == m - qq + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < qq; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace rsimple
