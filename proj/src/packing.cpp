#include "rsimple/packing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rsimple/errors.hpp"

namespace rsimple {

Nat PackingInstance::total_copies() const {
    Nat t = 0;
    for (const auto& m : mult) t += m;
    return t;
}

void PackingInstance::validate() const {
    if (universe < 0 || p < 0) throw ValidationError("negative sizes");
    if (r < 1) throw ValidationError("r must be positive");
    if (sets.size() != mult.size()) throw ValidationError("sets/mult length mismatch");
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (mult[i] < 1) throw ValidationError("multiplicity must be >= 1");
        std::set<int> seen;
        for (int e : sets[i]) {
            if (e < 0 || e >= universe) throw ValidationError("element out of range");
            if (!seen.insert(e).second) throw ValidationError("duplicate element in a set");
        }
        if (static_cast<int>(sets[i].size()) > p) throw ValidationError("set larger than p");
    }
}

Nat binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Nat b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

PackingInstance rule1(const PackingInstance& inst) {
    std::vector<Nat> occ(inst.universe, 0);
    for (std::size_t i = 0; i < inst.sets.size(); ++i)
        for (int e : inst.sets[i]) occ[e] += inst.mult[i];
    std::vector<char> keep_elem(inst.universe, 0);
    for (int e = 0; e < inst.universe; ++e)
        if (occ[e] > inst.r) keep_elem[e] = 1;

    PackingInstance out;
    out.universe = inst.universe;
    out.p = inst.p;
    out.q = inst.q;
    out.r = inst.r;
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        std::vector<int> s;
        for (int e : inst.sets[i])
            if (keep_elem[e]) s.push_back(e);
        if (s.empty()) {
            out.q -= inst.mult[i];  // emptied copies join the packing for free
        } else {
            out.sets.push_back(std::move(s));
            out.mult.push_back(inst.mult[i]);
        }
    }
    return out;
}

namespace {

std::int64_t next_prime_at_least(std::int64_t n) {
    if (n < 2) n = 2;
    auto is_prime = [](std::int64_t x) {
        if (x < 2) return false;
        for (std::int64_t d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    };
    while (!is_prime(n)) {
        ++n;
        if (n > (std::int64_t(1) << 31)) throw FieldTooSmall("no suitable prime below 2^31");
    }
    return n;
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) { return mod_pow(a, p - 2, p); }

// determinant over F_p, destroys its argument
std::int64_t det_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
    int n = static_cast<int>(m.size());
    std::int64_t det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int row = col; row < n; ++row)
            if (m[row][col] != 0) {
                piv = row;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = (p - det) % p;
        }
        det = det * m[col][col] % p;
        std::int64_t inv = mod_inv(m[col][col], p);
        for (int row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            std::int64_t f = m[row][col] * inv % p;
            for (int c2 = col; c2 < n; ++c2)
                m[row][c2] = (m[row][c2] - f * m[col][c2] % p + p) % p;
        }
    }
    return det;
}

}  // namespace

RepFamilyCertificate representative_family(const std::vector<std::vector<int>>& family, int p,
                                           int kappa, int universe) {
    RepFamilyCertificate cert;
    cert.bound = binomial(p + kappa, p);
    if (family.empty()) return cert;
    for (const auto& s : family)
        if (static_cast<int>(s.size()) != p) throw PreconditionViolated("family must be p-uniform");
    if (p == 0) {
        // the empty set represents everything
        cert.selected = {0};
        return cert;
    }
    std::int64_t n64 = universe;
    std::int64_t prime = next_prime_at_least(std::max<std::int64_t>(n64 * n64 + 1, 101));
    int rows = p + kappa;

    // column of element e: (1, x, x^2, ..., x^{rows-1}) with x = e+1
    auto column = [&](int e) {
        std::vector<std::int64_t> col(rows);
        std::int64_t x = (e + 1) % prime;
        std::int64_t v = 1;
        for (int i = 0; i < rows; ++i) {
            col[i] = v;
            v = v * x % prime;
        }
        return col;
    };

    // row-subset enumeration for the wedge coordinates
    std::vector<std::vector<int>> row_subsets;
    {
        std::vector<int> idx(p);
        for (int i = 0; i < p; ++i) idx[i] = i;
        while (true) {
            row_subsets.push_back(idx);
            int i = p - 1;
            while (i >= 0 && idx[i] == rows - p + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    std::size_t dim = row_subsets.size();

    auto wedge = [&](const std::vector<int>& set) {
        std::vector<std::vector<std::int64_t>> cols;
        for (int e : set) cols.push_back(column(e));
        std::vector<std::int64_t> vec(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            std::vector<std::vector<std::int64_t>> m(p, std::vector<std::int64_t>(p));
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b) m[a][b] = cols[b][row_subsets[j][a]];
            vec[j] = det_mod(std::move(m), prime);
        }
        return vec;
    };

    // incremental Gaussian elimination: keep sets whose wedge vector is
    // independent of the previously kept ones
    std::vector<std::vector<std::int64_t>> basis;  // row-echelon rows
    std::vector<int> pivot_col;
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto v = wedge(family[i]);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            std::int64_t f = v[pivot_col[b]];
            if (f == 0) continue;
            std::int64_t inv = mod_inv(basis[b][pivot_col[b]], prime);
            std::int64_t scale = f * inv % prime;
            for (std::size_t j = 0; j < dim; ++j)
                v[j] = (v[j] - scale * basis[b][j] % prime + prime) % prime;
        }
        int piv = -1;
        for (std::size_t j = 0; j < dim; ++j)
            if (v[j] != 0) {
                piv = static_cast<int>(j);
                break;
            }
        if (piv >= 0) {
            cert.selected.push_back(static_cast<int>(i));
            basis.push_back(std::move(v));
            pivot_col.push_back(piv);
            if (Nat(static_cast<long long>(cert.selected.size())) > cert.bound)
                throw std::logic_error("representative family exceeded its bound");
        }
    }
    return cert;
}

PackingInstance rule2(const PackingInstance& inst, int kappa, std::size_t copy_budget) {
    // multiplicities above r never help: any solution uses at most r copies
    // of a nonempty set (each of its elements would exceed r otherwise)
    std::vector<Nat> clamped(inst.mult.size());
    for (std::size_t i = 0; i < inst.mult.size(); ++i)
        clamped[i] = inst.mult[i] > inst.r ? inst.r : inst.mult[i];
    Nat total = 0;
    for (auto& m : clamped) total += m;
    if (Nat(static_cast<long long>(copy_budget)) < total)
        throw BudgetExceeded("too many set copies for rule 2");

    // expand into individual copies, padded to p-uniform with fresh dummies
    struct Copy {
        int orig;
        std::vector<int> padded;
    };
    std::vector<Copy> copies;
    int next_dummy = inst.universe;
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        long long c = static_cast<long long>(clamped[i]);
        for (long long j = 0; j < c; ++j) {
            Copy cp;
            cp.orig = static_cast<int>(i);
            cp.padded = inst.sets[i];
            while (static_cast<int>(cp.padded.size()) < inst.p) cp.padded.push_back(next_dummy++);
            copies.push_back(std::move(cp));
        }
    }

    auto q64 = to_int64(inst.q);
    long long rounds = q64 ? std::min<long long>(*q64, static_cast<long long>(copies.size()))
                           : static_cast<long long>(copies.size());
    std::vector<char> kept(copies.size(), 0);
    std::vector<int> remaining(copies.size());
    for (std::size_t i = 0; i < copies.size(); ++i) remaining[i] = static_cast<int>(i);
    for (long long round = 0; round < rounds && !remaining.empty(); ++round) {
        std::vector<std::vector<int>> fam;
        fam.reserve(remaining.size());
        for (int idx : remaining) fam.push_back(copies[idx].padded);
        RepFamilyCertificate cert = representative_family(fam, inst.p, kappa, next_dummy);
        std::set<int> chosen;
        for (int sel : cert.selected) chosen.insert(remaining[sel]);
        if (chosen.empty()) break;
        for (int idx : chosen) kept[idx] = 1;
        std::vector<int> rest;
        for (int idx : remaining)
            if (!chosen.count(idx)) rest.push_back(idx);
        remaining = std::move(rest);
    }

    PackingInstance out;
    out.universe = inst.universe;
    out.p = inst.p;
    out.q = inst.q;
    out.r = inst.r;
    std::map<int, Nat> kept_per_orig;
    for (std::size_t i = 0; i < copies.size(); ++i)
        if (kept[i]) kept_per_orig[copies[i].orig] += 1;
    for (auto& [orig, m] : kept_per_orig) {
        out.sets.push_back(inst.sets[orig]);
        out.mult.push_back(m);
    }
    return out;
}

namespace {

struct DistinctType {
    std::vector<int> set;
    long long avail;
};

bool dfs_pack(std::vector<DistinctType>& types, std::size_t i, long long need,
              std::vector<long long>& room, long long tail_avail, std::size_t& nodes,
              std::size_t node_budget) {
    if (++nodes > node_budget) throw BudgetExceeded("packing search budget exceeded");
    if (need == 0) return true;
    if (i == types.size() || tail_avail < need) return false;
    auto& t = types[i];
    long long fit = std::min(t.avail, need);
    for (int e : t.set) fit = std::min(fit, room[e]);
    // take x copies of this type, most first
    for (long long x = fit; x >= 0; --x) {
        for (int e : t.set) room[e] -= x;
        if (dfs_pack(types, i + 1, need - x, room, tail_avail - t.avail, nodes, node_budget))
            return true;
        for (int e : t.set) room[e] += x;
    }
    return false;
}

}  // namespace

bool solve_packing(const PackingInstance& raw, const PackingBudget& budget) {
    raw.validate();
    PackingInstance inst = rule1(raw);
    if (inst.q <= 0) return true;
    Nat total = inst.total_copies();
    // with q <= r no element can ever exceed r occurrences
    if (inst.q <= inst.r) return total >= inst.q;
    if (total < inst.q) return false;

    Nat kap_nat = inst.kappa();
    auto kap64 = to_int64(kap_nat);
    if (!kap64 || *kap64 > budget.max_kappa)
        throw BudgetExceeded("kappa too large for the packing pipeline");
    int kappa = static_cast<int>(*kap64);

    inst = rule2(inst, kappa, budget.copies);
    if (inst.total_copies() < inst.q) return false;

    // ground-set bound guaranteed by the reduction
    {
        std::set<int> elems;
        for (const auto& s : inst.sets) elems.insert(s.begin(), s.end());
        Nat limit = kap_nat * (Nat(1) << (2 * kappa));  // kappa * 4^kappa
        if (Nat(static_cast<long long>(elems.size())) >= limit)
            throw std::logic_error("reduced ground set exceeds kappa*4^kappa");
    }

    auto q64 = to_int64(inst.q);
    if (!q64) throw BudgetExceeded("q too large after reduction");
    long long need = *q64;

    // group identical sets; per-type availability capped by q
    std::map<std::vector<int>, long long> grouped;
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        auto s = inst.sets[i];
        std::sort(s.begin(), s.end());
        long long add = static_cast<long long>(std::min(inst.mult[i], inst.q));
        grouped[s] = std::min<long long>(grouped[s] + add, need);
    }
    std::vector<DistinctType> types;
    for (auto& [s, avail] : grouped) types.push_back({s, avail});
    // fail-first: tight types (large sets, few copies) first
    std::sort(types.begin(), types.end(), [](const DistinctType& a, const DistinctType& b) {
        if (a.set.size() != b.set.size()) return a.set.size() > b.set.size();
        return a.avail < b.avail;
    });

    long long rmach = static_cast<long long>(std::min(inst.r, inst.q));
    std::vector<long long> room(inst.universe, rmach);
    long long tail = 0;
    for (auto& t : types) tail += t.avail;
    std::size_t nodes = 0;
    return dfs_pack(types, 0, need, room, tail, nodes, budget.dfs_nodes);
}

KernelResult kernelize(const PackingInstance& raw, const PackingBudget& budget) {
    raw.validate();
    KernelResult out;
    PackingInstance inst = rule1(raw);

    auto finish = [&](PackingInstance k) {
        // encode multiplicities clamped at r
        for (auto& m : k.mult)
            if (m > k.r) m = k.r;
        std::set<int> elems;
        for (const auto& s : k.sets) elems.insert(s.begin(), s.end());
        Nat nprime = Nat(static_cast<long long>(elems.size()));
        // bits of log2(r+1), computed exactly
        Nat rr = k.r + 1;
        long long bits_per = 0;
        while (rr > 1) {
            rr = (rr + 1) / 2;
            ++bits_per;
        }
        Nat dense = 1;
        for (int i = 0; i < k.p; ++i) dense *= nprime + 1;
        out.bits = dense * bits_per;
        std::map<std::vector<int>, Nat> grouped;
        for (std::size_t i = 0; i < k.sets.size(); ++i) {
            auto s = k.sets[i];
            std::sort(s.begin(), s.end());
            grouped[s] += k.mult[i];
        }
        PackingInstance merged;
        merged.universe = k.universe;
        merged.p = k.p;
        merged.q = k.q;
        merged.r = k.r;
        for (auto& [s, m] : grouped) {
            merged.sets.push_back(s);
            merged.mult.push_back(m > k.r ? k.r : m);
        }
        out.distinct_types = Nat(static_cast<long long>(merged.sets.size()));
        out.kernel = std::move(merged);
        return out;
    };

    if (inst.q <= 0) {
        PackingInstance trivial;
        trivial.universe = 0;
        trivial.p = inst.p;
        trivial.q = 0;
        trivial.r = inst.r;
        return finish(trivial);
    }
    if (inst.q <= inst.r || inst.total_copies() < inst.q) {
        // answer decided by counting; emit a minimal equivalent instance
        bool yes = inst.total_copies() >= inst.q;
        PackingInstance trivial;
        trivial.universe = 1;
        trivial.p = std::max(inst.p, 1);
        trivial.r = inst.r;
        if (yes) {
            trivial.q = 0;
        } else {
            trivial.q = 2;
            trivial.sets = {{0}};
            trivial.mult = {Nat(1)};
        }
        return finish(trivial);
    }
    auto kap64 = to_int64(inst.kappa());
    if (!kap64 || *kap64 > budget.max_kappa)
        throw BudgetExceeded("kappa too large for kernelization");
    PackingInstance reduced = rule2(inst, static_cast<int>(*kap64), budget.copies);
    return finish(reduced);
}

}  // namespace rsimple
