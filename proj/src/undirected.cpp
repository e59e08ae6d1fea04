#include "rsimple/undirected.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstring>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rsimple/errors.hpp"
#include "rsimple/flow.hpp"
#include "rsimple/oracle.hpp"
#include "rsimple/parallel.hpp"

namespace rsimple {

std::int64_t OccurrenceSequence::sum() const {
    std::int64_t s = 0;
    for (auto v : d) s += v;
    return s;
}

std::vector<OccurrenceSequence> enumerate_occurrence_sequences(
    const std::vector<int>& active_colors, const Nat& r, std::int64_t two_b,
    std::size_t budget) {
    std::int64_t cap = two_b;
    if (Nat(cap) > r) {
        auto r64 = to_int64(r);
        cap = r64 ? *r64 : cap;
        cap = std::min<std::int64_t>(cap, two_b);
    }
    if (cap < 0) cap = 0;
    std::vector<OccurrenceSequence> out;
    OccurrenceSequence cur;
    cur.d.assign(active_colors.size(), 0);
    std::int64_t total = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == active_colors.size()) {
            if (out.size() >= budget) throw BudgetExceeded("too many occurrence sequences");
            out.push_back(cur);
            return;
        }
        for (std::int64_t v = 0; v <= cap && total + v <= two_b; ++v) {
            cur.d[i] = v;
            total += v;
            rec(i + 1);
            total -= v;
        }
        cur.d[i] = 0;
    };
    rec(0);
    return out;
}

// ---------------------------------------------------------------------------
// Treewidth-2 component DP: bottom-up over states of a hidden nice tree
// decomposition with bags of size at most 3. Only realizable states are
// materialized; every state records the root bag U, the exact color set of
// the multigraph built below, the bag degrees, the bag-internal edge
// multiplicities and the bag connectivity pattern.

namespace {

struct Tw2Key {
    std::uint8_t u[3];   // local vertex ids, 0xFF = unused, sorted ascending
    std::uint32_t mask;  // exact color set
    std::uint16_t f[3];  // degrees of bag vertices
    std::uint16_t ge[3]; // multiplicities of bag edges (01, 02, 12)
    std::uint8_t part;   // restricted-growth partition id over bag slots

    bool operator==(const Tw2Key& o) const { return std::memcmp(this, &o, sizeof(Tw2Key)) == 0; }
};

struct Tw2KeyHash {
    std::size_t operator()(const Tw2Key& k) const {
        std::uint64_t h = 1469598103934665603ull;
        const unsigned char* p = reinterpret_cast<const unsigned char*>(&k);
        for (std::size_t i = 0; i < sizeof(Tw2Key); ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// partitions over m <= 3 slots, canonical restricted-growth strings
int canon_part(int m, const int* lbl) {
    int map[3] = {-1, -1, -1};
    int next = 0, code = 0;
    for (int i = 0; i < m; ++i) {
        if (map[lbl[i]] < 0) map[lbl[i]] = next++;
        code = code * 3 + map[lbl[i]];
    }
    return code;
}

void decode_part(int m, int code, int* lbl) {
    for (int i = m - 1; i >= 0; --i) {
        lbl[i] = code % 3;
        code /= 3;
    }
}

bool single_part(int m, int code) {
    int lbl[3];
    decode_part(m, code, lbl);
    for (int i = 0; i < m; ++i)
        if (lbl[i] != 0) return false;
    return true;
}

}  // namespace

struct Tw2Cache::Instance {
    std::vector<std::int64_t> best_root;  // per exact color mask, -1 = none
    int a = 0;
};

namespace {

struct Tw2Builder {
    // filtered graph
    std::vector<int> verts;          // original vertex ids
    std::vector<int> color_idx;      // per local vertex, index into active
    std::vector<std::int64_t> cap;   // per local vertex
    std::vector<std::vector<int>> adj;
    bool edge(int x, int y) const {
        for (int w : adj[x])
            if (w == y) return true;
        return false;
    }

    int a = 0;
    std::size_t budget = 0;
    std::size_t created = 0;
    std::int64_t max_mult = 0;  // per-edge multiplicity cap (2r)

    using Map = std::unordered_map<Tw2Key, std::int64_t, Tw2KeyHash>;
    std::vector<Map> pending;  // per mask

    struct BucketState {
        std::uint32_t mask;
        std::uint16_t f[3];
        std::uint8_t part;
        std::int64_t value;
    };
    std::unordered_map<std::uint64_t, std::vector<BucketState>> join_bucket;

    static std::uint64_t bucket_key(const Tw2Key& k) {
        std::uint64_t b = 0;
        for (int i = 0; i < 3; ++i) b = (b << 8) | k.u[i];
        for (int i = 0; i < 3; ++i) b = (b << 13) | k.ge[i];
        return b;
    }

    int bag_size(const Tw2Key& k) const {
        int m = 0;
        while (m < 3 && k.u[m] != 0xFF) ++m;
        return m;
    }

    void upsert(Tw2Key k, std::int64_t val) {
        auto& mp = pending[k.mask];
        auto it = mp.find(k);
        if (it == mp.end()) {
            if (++created > budget) throw BudgetExceeded("tw2 DP state budget exceeded");
            mp.emplace(k, val);
        } else if (val > it->second) {
            it->second = val;
        }
    }

    // edge slot between bag positions i<j
    static int slot(int i, int j) { return (i == 0) ? (j == 1 ? 0 : 1) : 2; }

    std::shared_ptr<Tw2Cache::Instance> run() {
        auto inst = std::make_shared<Tw2Cache::Instance>();
        inst->a = a;
        inst->best_root.assign(std::size_t(1) << a, -1);
        pending.assign(std::size_t(1) << a, {});

        Tw2Key basis{};
        basis.u[0] = basis.u[1] = basis.u[2] = 0xFF;
        basis.mask = 0;
        basis.f[0] = basis.f[1] = basis.f[2] = 0;
        basis.ge[0] = basis.ge[1] = basis.ge[2] = 0;
        basis.part = 0;
        upsert(basis, 0);

        for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << a); ++mask) {
            // take a snapshot ordered by decreasing bag size (forgets feed
            // smaller bags within the same mask)
            for (int usize = 3; usize >= 0; --usize) {
                // iterate over a stable copy: forgets insert smaller bags only
                std::vector<std::pair<Tw2Key, std::int64_t>> snap;
                for (auto& [k, v] : pending[mask])
                    if (bag_size(k) == usize) snap.push_back({k, v});
                for (auto& [k, v] : snap) finalize(inst.get(), k, v);
            }
            pending[mask].clear();
        }
        return inst;
    }

    void finalize(Tw2Cache::Instance* inst, const Tw2Key& k, std::int64_t val) {
        int m = bag_size(k);
        // root read: nonempty bag, even degrees, single connected part
        if (m >= 1 && single_part(m, k.part)) {
            bool even = true;
            for (int i = 0; i < m; ++i)
                if (k.f[i] & 1) even = false;
            if (even && val > inst->best_root[k.mask]) inst->best_root[k.mask] = val;
        }
        gen_forget(k, val);
        gen_introduce(k, val);
        gen_join(k, val);
        join_bucket[bucket_key(k)].push_back(
            {k.mask, {k.f[0], k.f[1], k.f[2]}, k.part, val});
    }

    void gen_forget(const Tw2Key& k, std::int64_t val) {
        int m = bag_size(k);
        int lbl[3];
        decode_part(m, k.part, lbl);
        for (int i = 0; i < m; ++i) {
            int v = k.u[i];
            if (k.f[i] & 1) continue;
            if (static_cast<std::int64_t>(k.f[i]) > cap[v]) continue;
            // forgotten vertex must share its part with another bag vertex
            int share = 0;
            for (int j = 0; j < m; ++j)
                if (j != i && lbl[j] == lbl[i]) share = 1;
            if (!share) continue;
            Tw2Key nk{};
            nk.u[0] = nk.u[1] = nk.u[2] = 0xFF;
            nk.f[0] = nk.f[1] = nk.f[2] = 0;
            nk.ge[0] = nk.ge[1] = nk.ge[2] = 0;
            nk.mask = k.mask;
            int pos = 0;
            int nl[3];
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                nk.u[pos] = k.u[j];
                nk.f[pos] = k.f[j];
                nl[pos] = lbl[j];
                ++pos;
            }
            // surviving bag edges
            if (m == 3) {
                int x = (i == 0) ? 1 : 0;
                int y = (i == 2) ? 1 : 2;
                nk.ge[0] = k.ge[slot(std::min(x, y), std::max(x, y))];
            }
            nk.part = static_cast<std::uint8_t>(canon_part(pos, nl));
            upsert(nk, val);
        }
    }

    void gen_introduce(const Tw2Key& k, std::int64_t val) {
        int m = bag_size(k);
        if (m >= 3) return;
        int lbl_old[3];
        decode_part(m, k.part, lbl_old);
        for (std::size_t vl = 0; vl < verts.size(); ++vl) {
            bool in_bag = false;
            for (int i = 0; i < m; ++i)
                if (k.u[i] == vl) in_bag = true;
            if (in_bag) continue;
            int c = color_idx[vl];
            if (k.mask & (1u << c)) continue;
            // insertion position keeps u sorted
            int pos = 0;
            while (pos < m && k.u[pos] < vl) ++pos;
            // multiplicities towards existing bag vertices
            std::int64_t lim[2] = {0, 0};
            int others[2];
            int cnt = 0;
            for (int i = 0; i < m; ++i) {
                others[cnt] = i;
                lim[cnt] = edge(static_cast<int>(vl), k.u[i])
                               ? std::min({max_mult, cap[vl], cap[k.u[i]]})
                               : 0;
                ++cnt;
            }
            std::int64_t m0max = cnt >= 1 ? lim[0] : 0;
            std::int64_t m1max = cnt >= 2 ? lim[1] : 0;
            for (std::int64_t m0 = 0; m0 <= m0max; ++m0) {
                for (std::int64_t m1 = 0; m1 <= m1max; ++m1) {
                    std::int64_t fv = m0 + m1;
                    if (fv > cap[vl]) break;
                    if (cnt >= 1 && static_cast<std::int64_t>(k.f[others[0]]) + m0 > cap[k.u[others[0]]])
                        continue;
                    if (cnt >= 2 && static_cast<std::int64_t>(k.f[others[1]]) + m1 > cap[k.u[others[1]]])
                        continue;
                    Tw2Key nk{};
                    nk.u[0] = nk.u[1] = nk.u[2] = 0xFF;
                    nk.f[0] = nk.f[1] = nk.f[2] = 0;
                    nk.ge[0] = nk.ge[1] = nk.ge[2] = 0;
                    nk.mask = k.mask | (1u << c);
                    // rebuild slots with v inserted at pos
                    int map_old_to_new[3];
                    for (int i = 0; i < m; ++i) map_old_to_new[i] = (i < pos) ? i : i + 1;
                    for (int i = 0; i < m; ++i) {
                        nk.u[map_old_to_new[i]] = k.u[i];
                        nk.f[map_old_to_new[i]] = k.f[i];
                    }
                    nk.u[pos] = static_cast<std::uint8_t>(vl);
                    nk.f[pos] = static_cast<std::uint16_t>(fv);
                    std::int64_t mult_to[3] = {0, 0, 0};
                    if (cnt >= 1) mult_to[map_old_to_new[others[0]]] = m0;
                    if (cnt >= 2) mult_to[map_old_to_new[others[1]]] = m1;
                    for (int i = 0; i < m; ++i) nk.f[map_old_to_new[i]] += mult_to[map_old_to_new[i]];
                    // old bag edge (only possible when m == 2)
                    if (m == 2) {
                        int x = map_old_to_new[0], y = map_old_to_new[1];
                        nk.ge[slot(std::min(x, y), std::max(x, y))] = k.ge[0];
                    }
                    int nm = m + 1;
                    for (int i = 0; i < nm; ++i) {
                        if (i == pos) continue;
                        int lo = std::min(i, pos), hi = std::max(i, pos);
                        nk.ge[slot(lo, hi)] = static_cast<std::uint16_t>(mult_to[i]);
                    }
                    // partition: old labels shifted, v merged along positive edges
                    int nl[3];
                    for (int i = 0; i < m; ++i) nl[map_old_to_new[i]] = lbl_old[i];
                    nl[pos] = 2;  // fresh temporary label
                    int uf[3] = {0, 1, 2};
                    auto find = [&](int x) {
                        while (uf[x] != x) x = uf[x];
                        return x;
                    };
                    // start from label classes
                    int rep[3];
                    for (int i = 0; i < nm; ++i) rep[i] = i;
                    for (int i = 0; i < nm; ++i)
                        for (int j = 0; j < i; ++j)
                            if (nl[i] == nl[j]) uf[find(i)] = find(j);
                    for (int i = 0; i < nm; ++i) {
                        if (i == pos) continue;
                        if (mult_to[i] > 0) uf[find(i)] = find(pos);
                    }
                    int fl[3];
                    for (int i = 0; i < nm; ++i) fl[i] = find(i);
                    (void)rep;
                    nk.part = static_cast<std::uint8_t>(canon_part(nm, fl));
                    upsert(nk, val + m0 + m1);
                }
            }
        }
    }

    void gen_join(const Tw2Key& k, std::int64_t val) {
        int m = bag_size(k);
        std::uint32_t umask = 0;
        for (int i = 0; i < m; ++i) umask |= (1u << color_idx[k.u[i]]);
        std::int64_t bag_edges = k.ge[0] + k.ge[1] + k.ge[2];
        auto it = join_bucket.find(bucket_key(k));
        if (it == join_bucket.end()) return;
        for (const auto& o : it->second) {
            if ((o.mask & k.mask) != umask) continue;
            std::uint32_t pmask = o.mask | k.mask;
            if (pmask == o.mask || pmask == k.mask) continue;
            Tw2Key nk{};
            nk.u[0] = k.u[0];
            nk.u[1] = k.u[1];
            nk.u[2] = k.u[2];
            nk.ge[0] = k.ge[0];
            nk.ge[1] = k.ge[1];
            nk.ge[2] = k.ge[2];
            nk.mask = pmask;
            bool ok = true;
            for (int i = 0; i < m; ++i) {
                std::int64_t gs = 0;
                for (int j = 0; j < m; ++j) {
                    if (j == i) continue;
                    gs += k.ge[slot(std::min(i, j), std::max(i, j))];
                }
                std::int64_t fv = static_cast<std::int64_t>(k.f[i]) + o.f[i] - gs;
                if (fv < 0 || fv > cap[k.u[i]]) {
                    ok = false;
                    break;
                }
                nk.f[i] = static_cast<std::uint16_t>(fv);
            }
            if (!ok) continue;
            // common coarsening of the two partitions
            int l1[3], l2[3];
            decode_part(m, k.part, l1);
            decode_part(m, o.part, l2);
            int uf[3] = {0, 1, 2};
            auto find = [&](int x) {
                while (uf[x] != x) x = uf[x];
                return x;
            };
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < i; ++j)
                    if (l1[i] == l1[j] || l2[i] == l2[j]) uf[find(i)] = find(j);
            int fl[3];
            for (int i = 0; i < m; ++i) fl[i] = find(i);
            nk.part = static_cast<std::uint8_t>(canon_part(m, fl));
            upsert(nk, val + o.value - bag_edges);
        }
    }
};

std::string instance_key(const std::vector<int>& verts, const std::vector<std::int64_t>& caps) {
    std::ostringstream os;
    for (int v : verts) os << v << ',';
    os << ';';
    for (auto c : caps) os << c << ',';
    return os.str();
}

std::shared_ptr<Tw2Cache::Instance> build_instance(const ColoredUGraph& g,
                                                   const std::vector<int>& active,
                                                   const std::vector<int>& verts,
                                                   const std::vector<std::int64_t>& caps_by_color,
                                                   std::int64_t max_mult, const Tw2Budget& budget) {
    Tw2Builder b;
    b.a = static_cast<int>(active.size());
    b.budget = budget.states;
    b.max_mult = max_mult;
    std::vector<int> color_pos(g.col.c + 1, -1);
    for (std::size_t i = 0; i < active.size(); ++i) color_pos[active[i]] = static_cast<int>(i);
    std::vector<int> local(g.g.n(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    b.verts = verts;
    b.color_idx.resize(verts.size());
    b.cap.resize(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        int ci = color_pos[g.col.color[verts[i]]];
        assert(ci >= 0);
        b.color_idx[i] = ci;
        b.cap[i] = caps_by_color[ci];
    }
    b.adj.assign(verts.size(), {});
    for (auto [u, v] : g.g.edges()) {
        if (local[u] < 0 || local[v] < 0) continue;
        b.adj[local[u]].push_back(local[v]);
        b.adj[local[v]].push_back(local[u]);
    }
    return b.run();
}

}  // namespace

std::optional<std::int64_t> tw2_component_max(const ColoredUGraph& g, const std::vector<int>& C,
                                              int v_star, const OccurrenceSequence& dbar,
                                              const std::vector<int>& active, const Nat& r,
                                              Tw2Cache* cache, const Tw2Budget& budget) {
    std::vector<int> color_pos(g.col.c + 1, -1);
    for (std::size_t i = 0; i < active.size(); ++i) color_pos[active[i]] = static_cast<int>(i);
    int cstar = g.col.color[v_star];
    if (color_pos[cstar] < 0) throw PreconditionViolated("v* color not active");
    std::uint32_t cmask = 0;
    bool star_in = false;
    for (int c : C) {
        if (color_pos[c] >= 0) cmask |= 1u << color_pos[c];
        if (c == cstar) star_in = true;
    }
    if (!star_in) throw PreconditionViolated("color of v* must belong to C");
    auto rr = to_int64(r);
    if (!rr) throw BudgetExceeded("r too large for the treewidth-2 DP");
    if (active.size() > 20) throw BudgetExceeded("too many active colors for the treewidth-2 DP");

    std::vector<std::int64_t> caps(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) caps[i] = 2 * (*rr - dbar.d[i]);
    // vertices sharing the color of v* are excluded unless they are v*
    std::vector<int> verts;
    for (int v = 0; v < g.g.n(); ++v) {
        if (color_pos[g.col.color[v]] < 0) continue;
        if (g.col.color[v] == cstar && v != v_star) continue;
        verts.push_back(v);
    }
    std::shared_ptr<Tw2Cache::Instance> inst;
    std::string key = instance_key(verts, caps);
    if (cache) {
        auto it = cache->instances.find(key);
        if (it != cache->instances.end()) inst = it->second;
    }
    if (!inst) {
        inst = build_instance(g, active, verts, caps, 2 * *rr, budget);
        if (cache) cache->instances[key] = inst;
    }
    std::int64_t best = -1;
    std::uint32_t starbit = 1u << color_pos[cstar];
    for (std::uint32_t m = cmask;; m = (m - 1) & cmask) {
        if ((m & starbit) && inst->best_root[m] > best) best = inst->best_root[m];
        if (m == 0) break;
    }
    if (best < 0) return std::nullopt;
    return best;
}

// ---------------------------------------------------------------------------
// (walk, tw-2) partition DP

namespace {

struct WalkTw2 {
    const ColoredUGraph& g;
    const std::vector<int>& active;
    std::vector<int> color_pos;    // color -> active index
    std::vector<std::int64_t> dw;  // weights for mixed-radix dbar encoding
    std::vector<std::int64_t> dmax;
    int a;
    std::size_t seq_span;
    std::vector<std::int64_t> memo;  // -2 uncomputed, -1 = -inf, else value
    Tw2Cache::Instance* inst;        // caps fixed by the full dbar

    std::int64_t encode(const std::vector<std::int64_t>& d) const {
        std::int64_t idx = 0;
        for (int i = 0; i < a; ++i) idx += d[i] * dw[i];
        return idx;
    }

    std::int64_t& cell(int v, std::int64_t didx, std::uint32_t cmask) {
        std::size_t pos =
            (static_cast<std::size_t>(v) * seq_span + static_cast<std::size_t>(didx)) *
                (std::size_t(1) << a) +
            cmask;
        return memo[pos];
    }

    std::int64_t run(int v, std::vector<std::int64_t>& d, std::int64_t didx, std::uint32_t cmask) {
        auto& mem = cell(v, didx, cmask);
        if (mem != -2) return mem;
        mem = -1;
        int c = color_pos[g.col.color[v]];
        if (c < 0 || d[c] == 0) return mem;
        std::int64_t total = 0;
        for (int i = 0; i < a; ++i) total += d[i];
        if (total == 1) {
            // single-visit walk; optionally hang one component at v
            std::int64_t best = 0;
            std::uint32_t lim = cmask;
            std::uint32_t starbit = 1u << c;
            for (std::uint32_t m = lim;; m = (m - 1) & lim) {
                if ((m & starbit) && inst->best_root[m] > best) best = inst->best_root[m];
                if (m == 0) break;
            }
            mem = best;
            return mem;
        }
        d[c] -= 1;
        std::int64_t didx2 = didx - dw[c];
        std::int64_t best = -1;
        std::uint32_t starbit = 1u << c;
        for (int u : g.g.adj(v)) {
            std::int64_t n1 = run(u, d, didx2, cmask);
            if (n1 >= 0 && 1 + n1 > best) best = 1 + n1;
            // attach a component with exact color set m at this visit
            for (std::uint32_t m = cmask;; m = (m - 1) & cmask) {
                if ((m & starbit) && inst->best_root[m] >= 0) {
                    std::int64_t n2 = run(u, d, didx2, cmask & ~m);
                    if (n2 >= 0 && inst->best_root[m] + 1 + n2 > best)
                        best = inst->best_root[m] + 1 + n2;
                }
                if (m == 0) break;
            }
        }
        d[c] += 1;
        mem = best;
        return mem;
    }
};

}  // namespace

bool walk_tw2_partition(const ColoredUGraph& g, const Nat& k, const Nat& r,
                        const OccurrenceSequence& dbar, const std::vector<int>& active,
                        Tw2Cache* cache, const Tw2Budget& budget) {
    if (active.empty()) return false;
    if (active.size() > 20) throw BudgetExceeded("too many active colors");
    auto rr = to_int64(r);
    if (!rr) throw BudgetExceeded("r too large for the general pipeline");

    WalkTw2 dp{g, active, {}, {}, {}, 0, 0, {}, nullptr};
    dp.a = static_cast<int>(active.size());
    dp.color_pos.assign(g.col.c + 1, -1);
    for (std::size_t i = 0; i < active.size(); ++i) dp.color_pos[active[i]] = static_cast<int>(i);
    dp.dmax = dbar.d;
    dp.dw.resize(dp.a);
    std::int64_t span = 1;
    for (int i = 0; i < dp.a; ++i) {
        dp.dw[i] = span;
        span *= dbar.d[i] + 1;
        if (span > static_cast<std::int64_t>(budget.states)) throw BudgetExceeded("occurrence-sequence DP too large");
    }
    dp.seq_span = static_cast<std::size_t>(span);
    std::size_t cells = static_cast<std::size_t>(g.g.n()) * dp.seq_span * (std::size_t(1) << dp.a);
    if (cells > budget.states) throw BudgetExceeded("walk DP table exceeds budget");
    dp.memo.assign(cells, -2);

    // the component DP uses the full dbar caps everywhere
    std::vector<std::int64_t> caps(dp.a);
    for (int i = 0; i < dp.a; ++i) caps[i] = 2 * (*rr - dbar.d[i]);
    std::vector<int> verts;
    for (int v = 0; v < g.g.n(); ++v)
        if (dp.color_pos[g.col.color[v]] >= 0) verts.push_back(v);
    Tw2Cache local_cache;
    Tw2Cache* cc = cache ? cache : &local_cache;
    std::string key = instance_key(verts, caps);
    std::shared_ptr<Tw2Cache::Instance> inst;
    auto it = cc->instances.find(key);
    if (it != cc->instances.end())
        inst = it->second;
    else {
        inst = build_instance(g, active, verts, caps, 2 * *rr, budget);
        cc->instances[key] = inst;
    }
    dp.inst = inst.get();

    std::vector<std::int64_t> d = dbar.d;
    std::int64_t didx = dp.encode(d);
    std::uint32_t full = (dp.a == 32) ? ~0u : ((1u << dp.a) - 1);
    for (int v = 0; v < g.g.n(); ++v) {
        std::int64_t val = dp.run(v, d, didx, full);
        if (val >= 0 && Nat(val) + 1 >= k) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Special pipeline

MatchingShortcut matching_shortcut(const UGraph& g, const Nat& k, const Nat& r) {
    MatchingShortcut out;
    auto m = maximal_matching(g);
    Nat need = ceil_div(k, r);
    if (Nat(static_cast<long long>(m.size())) >= need) {
        out.yes = true;
        return out;
    }
    out.cover = vertex_cover_from(m);
    return out;
}

namespace {

// Count-vector reachability: every reachable (end vertex, per-color counts)
// state corresponds to an r-simple walk with exactly those visit counts.
struct CountWalker {
    const ColoredUGraph& g;
    std::vector<int> color_pos;
    std::vector<std::int64_t> caps;  // per active color
    std::vector<std::int64_t> w;     // mixed radix weights
    std::int64_t span = 1;
    int a = 0;
    std::int64_t sum_cap = 0;

    CountWalker(const ColoredUGraph& g_, const std::vector<int>& active,
                const std::vector<std::int64_t>& caps_, std::int64_t sum_cap_, std::size_t budget)
        : g(g_), caps(caps_), sum_cap(sum_cap_) {
        a = static_cast<int>(active.size());
        color_pos.assign(g.col.c + 1, -1);
        for (int i = 0; i < a; ++i) color_pos[active[i]] = i;
        w.resize(a);
        for (int i = 0; i < a; ++i) {
            w[i] = span;
            span *= caps[i] + 1;
            if (span <= 0 || static_cast<std::size_t>(span) > budget / std::max(1, g.g.n()))
                throw BudgetExceeded("count-vector walk space exceeds budget");
        }
    }

    // visits all reachable states; cb(vertex, counts) on each new state
    void search(const std::function<void(int, const std::vector<std::int64_t>&)>& cb) {
        std::vector<std::uint64_t> visited(
            (static_cast<std::size_t>(span) * g.g.n() + 63) / 64, 0);
        auto test_set = [&](std::int64_t idx) {
            std::size_t word = static_cast<std::size_t>(idx) >> 6, bit = idx & 63;
            if (visited[word] & (1ull << bit)) return true;
            visited[word] |= 1ull << bit;
            return false;
        };
        std::vector<std::pair<int, std::int64_t>> frontier, next;
        std::vector<std::int64_t> counts(a, 0);
        for (int v = 0; v < g.g.n(); ++v) {
            int c = color_pos[g.col.color[v]];
            if (c < 0 || caps[c] < 1) continue;
            std::int64_t idx = static_cast<std::int64_t>(v) * span + w[c];
            if (!test_set(idx)) frontier.push_back({v, w[c]});
        }
        std::int64_t level = 1;
        auto report = [&](int v, std::int64_t cidx) {
            std::int64_t rem = cidx;
            for (int i = a - 1; i >= 0; --i) {
                counts[i] = rem / w[i];
                rem %= w[i];
            }
            cb(v, counts);
        };
        for (auto& [v, cidx] : frontier) report(v, cidx);
        while (!frontier.empty() && level < sum_cap) {
            next.clear();
            for (auto& [v, cidx] : frontier) {
                for (int u : g.g.adj(v)) {
                    int cu = color_pos[g.col.color[u]];
                    if (cu < 0) continue;
                    std::int64_t digit = (cidx / w[cu]) % (caps[cu] + 1);
                    if (digit >= caps[cu]) continue;
                    std::int64_t nidx = cidx + w[cu];
                    std::int64_t full = static_cast<std::int64_t>(u) * span + nidx;
                    if (!test_set(full)) {
                        next.push_back({u, nidx});
                        report(u, nidx);
                    }
                }
            }
            frontier.swap(next);
            ++level;
        }
    }
};

}  // namespace

bool walk_fit_exists(const ColoredUGraph& g, const OccurrenceSequence& dbar,
                     const std::vector<int>& active, std::size_t state_budget) {
    std::int64_t sum = dbar.sum();
    if (sum == 0) return false;
    bool found = false;
    CountWalker cw(g, active, dbar.d, sum, state_budget);
    cw.search([&](int, const std::vector<std::int64_t>& counts) {
        if (found) return;
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] != dbar.d[i]) return;
        found = true;
    });
    return found;
}

bool edge_fit_exists(const FitSpec& spec) {
    const ColoredUGraph& g = *spec.g;
    std::vector<int> color_pos(g.col.c + 1, -1);
    for (std::size_t i = 0; i < spec.active.size(); ++i) color_pos[spec.active[i]] = static_cast<int>(i);
    int n = g.g.n();
    Nat F = 0;
    std::vector<Nat> cv(n, 0);
    Nat sum_d = 0;
    for (std::size_t i = 0; i < spec.active.size(); ++i) sum_d += spec.dbar.d[i];
    for (int v = 0; v < n; ++v) {
        int c = color_pos[g.col.color[v]];
        Nat dv = c >= 0 ? Nat(spec.dbar.d[c]) : Nat(0);
        if (dv > spec.r) return false;
        cv[v] = spec.r - dv;
        F += cv[v];
    }
    Nat deficit = Nat(spec.k) - sum_d;
    Nat ell = spec.variant == EdgeFitVariant::DoubleDeficit ? 2 * deficit : deficit;

    FlowNetwork net;
    int s = 2 * n, t = 2 * n + 1;
    net.nodes = 2 * n + 2;
    for (int v = 0; v < n; ++v) {
        net.add_inf(2 * v, 2 * v + 1, 0, 1);  // self arc, cost 1
        net.add(s, 2 * v, 0, cv[v], 0);
        net.add(2 * v + 1, t, 0, cv[v], 0);
    }
    for (auto [u, v] : g.g.edges()) {
        net.add_inf(2 * u, 2 * v + 1, 0, 0);
        net.add_inf(2 * v, 2 * u + 1, 0, 0);
    }
    auto res = min_cost_flow(net, s, t, F);
    if (!res) return false;
    return res->cost + ell <= F;
}

bool special_colorful(const ColoredUGraph& g, const Nat& k, const Nat& r,
                      const std::vector<int>& cover, EdgeFitVariant variant,
                      const SpecialBudget& budget, int jobs) {
    if (cover.size() > 24) throw BudgetExceeded("vertex cover too large for subset loop");
    Nat bq = ceil_div(k, r);
    std::int64_t two_b;
    {
        Nat tb = 2 * (30 * bq + 1);
        auto t64 = to_int64(tb);
        two_b = t64 ? *t64 : std::numeric_limits<std::int64_t>::max() / 4;
    }

    int csize = static_cast<int>(cover.size());
    for (std::uint32_t sel = 0; sel < (1u << csize); ++sel) {
        std::vector<int> uprime;
        for (int i = 0; i < csize; ++i)
            if (sel & (1u << i)) uprime.push_back(cover[i]);
        // selected cover vertices must carry distinct colors
        std::set<int> ucolors;
        bool distinct = true;
        for (int v : uprime)
            if (!ucolors.insert(g.col.color[v]).second) distinct = false;
        if (!distinct) continue;

        // delete unselected cover vertices and same-colored non-cover vertices
        std::set<int> cover_set(cover.begin(), cover.end());
        std::vector<char> drop(g.g.n(), 0);
        for (int v : cover) drop[v] = 1;
        for (int v : uprime) drop[v] = 0;
        for (int v = 0; v < g.g.n(); ++v) {
            if (cover_set.count(v)) continue;
            if (ucolors.count(g.col.color[v])) drop[v] = 1;
        }
        std::vector<int> keep;
        for (int v = 0; v < g.g.n(); ++v)
            if (!drop[v]) keep.push_back(v);
        if (keep.empty()) continue;

        std::vector<int> old_id;
        ColoredUGraph sub;
        sub.g = g.g.induced(keep, &old_id);
        sub.col.c = g.col.c;
        sub.col.color.resize(sub.g.n());
        for (int v = 0; v < sub.g.n(); ++v) sub.col.color[v] = g.col.color[old_id[v]];

        std::vector<int> active;
        {
            std::set<int> ac;
            for (int v = 0; v < sub.g.n(); ++v) ac.insert(sub.col.color[v]);
            active.assign(ac.begin(), ac.end());
        }
        std::vector<int> required_pos;  // active indices that must have d >= 1
        for (std::size_t i = 0; i < active.size(); ++i)
            if (ucolors.count(active[i])) required_pos.push_back(static_cast<int>(i));
        if (required_pos.size() != ucolors.size()) continue;  // selected color vanished

        std::vector<std::int64_t> caps(active.size());
        auto r64 = to_int64(r);
        for (std::size_t i = 0; i < active.size(); ++i) {
            std::int64_t c = r64 ? *r64 : std::numeric_limits<std::int64_t>::max() / 4;
            caps[i] = std::min<std::int64_t>(c, two_b);
        }

        // reachable count vectors = exactly the walk-fit occurrence sequences
        std::vector<std::vector<std::int64_t>> candidates;
        std::unordered_set<std::uint64_t> seen;
        {
            CountWalker cw(sub, active, caps, two_b, budget.walk_states);
            cw.search([&](int, const std::vector<std::int64_t>& counts) {
                for (int p : required_pos)
                    if (counts[p] == 0) return;
                std::uint64_t h = 1469598103934665603ull;
                for (auto c : counts) {
                    h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ull;
                    h *= 1099511628211ull;
                }
                if (seen.insert(h).second) {
                    if (candidates.size() >= budget.sequences)
                        throw BudgetExceeded("too many walk-fit sequences");
                    candidates.push_back(counts);
                }
            });
        }

        // cheap necessary bound: sum d + achievable phi must reach k
        std::vector<Nat> class_size(active.size(), 0);
        for (int v = 0; v < sub.g.n(); ++v) {
            std::size_t i = 0;
            while (active[i] != sub.col.color[v]) ++i;
            class_size[i] += 1;
        }
        std::atomic<bool> found{false};
        std::atomic<bool> failed{false};
        std::string fail_msg;
        parallel_for(candidates.size(), jobs, [&](std::size_t ci) {
            if (found.load(std::memory_order_relaxed)) return;
            try {
                const auto& counts = candidates[ci];
                Nat sum_d = 0, bound = 0;
                for (std::size_t i = 0; i < counts.size(); ++i) {
                    sum_d += counts[i];
                    bound += class_size[i] * (r - Nat(counts[i]));
                }
                if (sum_d + bound < k) return;
                FitSpec fs;
                fs.g = &sub;
                fs.dbar.d = counts;
                fs.active = active;
                fs.cover = uprime;
                fs.k = k;
                fs.r = r;
                fs.variant = variant;
                if (edge_fit_exists(fs)) found.store(true, std::memory_order_relaxed);
            } catch (const std::exception& ex) {
                if (!failed.exchange(true)) fail_msg = ex.what();
            }
        });
        if (failed.load()) throw BudgetExceeded(fail_msg);
        if (found.load()) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Drivers

namespace {

ColoringFamily pick_family_undirected(int n, const Nat& b, const UndirectedParams& p) {
    switch (p.coloring) {
        case ColoringChoice::Injective: {
            if (b - 1 < n) throw InvalidKind("bound too small for an injective coloring");
            return ColoringFamily::injective(n, std::max(n, 1));
        }
        case ColoringChoice::Exhaustive: {
            auto c64 = to_int64(b);
            if (!c64 || *c64 > (1 << 20)) throw BudgetExceeded("exhaustive coloring budget");
            return ColoringFamily::exhaustive(n, std::max<int>(1, static_cast<int>(*c64)),
                                              p.exhaustive_budget);
        }
        case ColoringChoice::Randomized: {
            int c = static_cast<int>(*to_int64(std::min(b, Nat(std::max(n, 1)))));
            std::uint64_t trials = p.trials ? p.trials : randomized_trials_default(n, c, 100'000);
            return ColoringFamily::randomized(n, std::max(c, 1), trials, p.seed);
        }
        case ColoringChoice::Auto:
        default: {
            if (b - 1 >= n) return ColoringFamily::injective(n, std::max(n, 1));
            auto c64 = to_int64(b);
            int c = std::max<int>(1, static_cast<int>(*c64));
            Nat count = 1;
            bool small = true;
            for (int i = 0; i < n && small; ++i) {
                count *= c;
                if (count > p.exhaustive_budget) small = false;
            }
            if (small) return ColoringFamily::exhaustive(n, c, p.exhaustive_budget);
            std::uint64_t trials = p.trials ? p.trials : randomized_trials_default(n, c, 100'000);
            return ColoringFamily::randomized(n, c, trials, p.seed);
        }
    }
}

Nat undirected_bound(const Nat& k, const Nat& r, const UndirectedParams& p) {
    if (p.bound_override) return Nat(*p.bound_override);
    return 30 * ceil_div(k, r) + 1;
}

}  // namespace

bool colorful_wrapper(const UGraph& g, const Nat& k, const Nat& r, long long b,
                      const ColoringFamily& fam, const UndirectedParams& params) {
    bool yes = false;
    fam.for_each([&](const Coloring& col) {
        ColoredUGraph gc{g, col};
        std::set<int> ac;
        for (int v = 0; v < g.n(); ++v) ac.insert(col.color[v]);
        std::vector<int> active(ac.begin(), ac.end());
        std::int64_t two_b = 2 * static_cast<std::int64_t>(b);
        auto seqs = enumerate_occurrence_sequences(active, r, two_b, params.sequence_budget);

        std::atomic<bool> found{false};
        std::atomic<bool> failed{false};
        std::string fail_msg;
        parallel_for(seqs.size(), params.jobs, [&](std::size_t i) {
            if (found.load(std::memory_order_relaxed)) return;
            try {
                Tw2Cache cache;
                if (walk_tw2_partition(gc, k, r, seqs[i], active, &cache, params.tw2))
                    found.store(true, std::memory_order_relaxed);
            } catch (const std::exception& ex) {
                if (!failed.exchange(true)) fail_msg = ex.what();
            }
        });
        if (failed.load()) throw BudgetExceeded(fail_msg);
        if (found.load()) yes = true;
        return !yes;
    });
    return yes;
}

bool solve_undirected(const UGraph& g, const Nat& k, const Nat& r, const UndirectedParams& params,
                      long long* bound_used) {
    if (k < 1 || r < 1) throw ValidationError("k and r must be positive");
    Nat b = undirected_bound(k, r, params);
    if (bound_used) {
        auto b64 = to_int64(b);
        *bound_used = b64 ? *b64 : -1;
    }
    if (g.n() == 0) return false;
    if (k == 1) return true;

    bool special_possible = r * r > k;
    if (params.pipeline == UndirectedPipeline::Special && !special_possible)
        throw ValidationError("special pipeline requires r^2 > k");

    for (const auto& comp : g.components()) {
        UGraph sub = g.induced(comp);
        if (niceness_undirected(sub, k, r, params.niceness) == Niceness::NotNice) return true;
        bool use_special = params.pipeline == UndirectedPipeline::Special ||
                           (params.pipeline == UndirectedPipeline::Auto && special_possible);
        if (use_special) {
            MatchingShortcut ms = matching_shortcut(sub, k, r);
            if (ms.yes) return true;
            ColoringFamily fam = pick_family_undirected(sub.n(), b, params);
            bool yes = false;
            fam.for_each([&](const Coloring& col) {
                ColoredUGraph gc{sub, col};
                if (special_colorful(gc, k, r, ms.cover, params.edge_fit, params.special,
                                     params.jobs))
                    yes = true;
                return !yes;
            });
            if (yes) return true;
        } else {
            ColoringFamily fam = pick_family_undirected(sub.n(), b, params);
            auto b64 = to_int64(b);
            long long bl = b64 ? *b64 : std::numeric_limits<long long>::max() / 4;
            if (colorful_wrapper(sub, k, r, bl, fam, params)) return true;
        }
    }
    return false;
}

UGraph gen_grid_pendant(int c, const Nat& r) {
    if (c < 2) throw ValidationError("grid size must be at least 2");
    if (r < 5) throw ValidationError("construction requires r >= 5");
    int base = c * c;
    auto vid = [&](int i, int j) { return ((i % c + c) % c) * c + ((j % c + c) % c); };
    std::vector<std::pair<int, int>> base_edges;
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) {
            base_edges.push_back({vid(i, j), vid(i, j + 1)});
            base_edges.push_back({vid(i, j), vid(i + 1, j)});
        }
    int m = static_cast<int>(base_edges.size());  // 2c^2, parallel pairs possible for c = 2
    int subdiv_start = base;
    int pendant_start = base + 2 * m;
    int n = base + 2 * m + (base + 2 * m);
    std::vector<Edge> edges;
    for (int e = 0; e < m; ++e) {
        auto [u, v] = base_edges[e];
        int x = subdiv_start + 2 * e, y = subdiv_start + 2 * e + 1;
        edges.push_back({u, x});
        edges.push_back({x, y});
        edges.push_back({y, v});
    }
    for (int v = 0; v < base + 2 * m; ++v) edges.push_back({v, pendant_start + v});
    return UGraph(n, std::move(edges));
}

}  // namespace rsimple
