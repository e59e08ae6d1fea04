#include "rsimple/longpath.hpp"

#include <algorithm>

#include "rsimple/errors.hpp"

namespace rsimple {

namespace {

constexpr int kMaxColorsForSubsetDp = 26;

// Colorful-path subset DP for one coloring. starts[v] marks allowed first
// vertices. Returns, for every v, the largest number of vertices of a
// colorful path ending at v (0 = unreachable).
std::vector<int> colorful_longest(const Digraph& g, const Coloring& col,
                                  const std::vector<char>& starts) {
    int n = g.n(), c = col.c;
    if (c > kMaxColorsForSubsetDp) throw BudgetExceeded("color-subset DP over 2^c too large");
    std::size_t nmask = std::size_t(1) << c;
    // reach[mask] = bitset of endpoints over n (n <= 64 here)
    if (n > 64) throw BudgetExceeded("subset DP endpoint bitset limited to 64 vertices");
    std::vector<std::uint64_t> reach(nmask, 0);
    std::vector<int> best(n, 0);
    for (int v = 0; v < n; ++v)
        if (starts[v]) {
            reach[std::size_t(1) << (col.color[v] - 1)] |= 1ull << v;
            best[v] = std::max(best[v], 1);
        }
    for (std::size_t mask = 1; mask < nmask; ++mask) {
        std::uint64_t ends = reach[mask];
        if (!ends) continue;
        int pc = __builtin_popcountll(mask);
        while (ends) {
            int v = __builtin_ctzll(ends);
            ends &= ends - 1;
            if (best[v] < pc) best[v] = pc;
            for (int u : g.out(v)) {
                std::size_t ubit = std::size_t(1) << (col.color[u] - 1);
                if (mask & ubit) continue;
                reach[mask | ubit] |= 1ull << u;
            }
        }
    }
    return best;
}

bool run_family(const Digraph& g, const ColoringFamily& fam, const std::vector<char>& starts,
                int target_vertex, int ell) {
    bool found = false;
    fam.for_each([&](const Coloring& col) {
        auto best = colorful_longest(g, col, starts);
        if (target_vertex >= 0) {
            if (best[target_vertex] >= ell) found = true;
        } else {
            for (int v = 0; v < g.n(); ++v)
                if (best[v] >= ell) found = true;
        }
        return !found;
    });
    return found;
}

ColoringFamily pick_family(int n, const NicenessParams& p) {
    if (n <= p.exact_n_cap) return ColoringFamily::injective(n, std::max(n, 1));
    return ColoringFamily::randomized(n, std::min(n, kMaxColorsForSubsetDp - 1),
                                      p.trials_cap, p.seed);
}

}  // namespace

bool detect_long_path(const Digraph& g, int s, int t, int ell, const ColoringFamily& fam) {
    if (ell < 1) throw ValidationError("ell must be >= 1");
    if (ell > g.n()) return false;
    std::vector<char> starts(g.n(), 0);
    starts[s] = 1;
    return run_family(g, fam, starts, t, ell);
}

bool detect_long_path_any(const Digraph& g, int ell, const ColoringFamily& fam) {
    if (ell < 1) throw ValidationError("ell must be >= 1");
    if (ell > g.n()) return false;
    std::vector<char> starts(g.n(), 1);
    return run_family(g, fam, starts, -1, ell);
}

Niceness niceness_directed(const Digraph& g, const Nat& k, const Nat& r,
                           const NicenessParams& params) {
    int n = g.n();
    if (n == 0) return Niceness::Nice;
    // Cycle of length L iff some arc (v,u) plus a u->v simple path on L vertices.
    Nat ell1 = ceil_div(k, r);       // cycle threshold: L*r >= k
    Nat ell2 = ceil_div(2 * k, r);   // path threshold: p*r >= 2k
    ColoringFamily fam = pick_family(n, params);

    if (ell1 <= n) {
        int l1 = static_cast<int>(ell1);
        // One DP per start u covers all arcs (v,u) at once.
        for (int u = 0; u < n; ++u) {
            if (g.in(u).empty()) continue;
            bool cyc = false;
            std::vector<char> starts(n, 0);
            starts[u] = 1;
            fam.for_each([&](const Coloring& col) {
                auto best = colorful_longest(g, col, starts);
                for (int v : g.in(u))
                    if (best[v] >= l1) cyc = true;
                return !cyc;
            });
            if (cyc) return Niceness::NotNice;
        }
    }
    if (ell2 <= n) {
        if (detect_long_path_any(g, static_cast<int>(ell2), fam)) return Niceness::NotNice;
    }
    return Niceness::Nice;
}

Niceness niceness_undirected(const UGraph& g, const Nat& k, const Nat& r,
                             const NicenessParams& params) {
    int n = g.n();
    if (n == 0) return Niceness::Nice;
    // Path of length L (edge count) = L+1 vertices; L*r >= k.
    Nat ell = ceil_div(k, r) + 1;
    if (ell > n) return Niceness::Nice;
    Digraph bid = g.bidirected();
    ColoringFamily fam = pick_family(n, params);
    return detect_long_path_any(bid, static_cast<int>(ell), fam) ? Niceness::NotNice
                                                                 : Niceness::Nice;
}

}  // namespace rsimple
