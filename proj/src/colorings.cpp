#include "rsimple/colorings.hpp"

#include <cmath>
#include <vector>

#include "rsimple/errors.hpp"

namespace rsimple {

ColoringFamily ColoringFamily::exhaustive(int n, int c, const Nat& budget) {
    if (c < 1) throw ValidationError("color count must be >= 1");
    Nat count = 1;
    for (int i = 0; i < n; ++i) {
        count *= c;
        if (count > budget) throw BudgetExceeded("exhaustive family of c^n colorings exceeds budget");
    }
    return ColoringFamily(ColoringKind::Exhaustive, n, c);
}

ColoringFamily ColoringFamily::injective(int n, int c) {
    if (c < 1) throw ValidationError("color count must be >= 1");
    if (c < n) throw InvalidKind("injective family requires c >= n");
    return ColoringFamily(ColoringKind::Injective, n, c);
}

ColoringFamily ColoringFamily::randomized(int n, int c, std::uint64_t trials, std::uint64_t seed) {
    if (c < 1) throw ValidationError("color count must be >= 1");
    ColoringFamily f(ColoringKind::Randomized, n, c);
    f.trials_ = trials;
    f.seed_ = seed;
    return f;
}

Nat ColoringFamily::size() const {
    switch (kind_) {
        case ColoringKind::Exhaustive: {
            Nat count = 1;
            for (int i = 0; i < n_; ++i) count *= c_;
            return count;
        }
        case ColoringKind::Injective:
            return 1;
        case ColoringKind::Randomized:
            return Nat(trials_);
    }
    return 0;
}

void ColoringFamily::for_each(const std::function<bool(const Coloring&)>& fn) const {
    Coloring col;
    col.c = c_;
    col.color.assign(n_, 1);
    switch (kind_) {
        case ColoringKind::Exhaustive: {
            // odometer over c^n assignments
            while (true) {
                if (!fn(col)) return;
                int i = 0;
                while (i < n_ && col.color[i] == c_) col.color[i++] = 1;
                if (i == n_) return;
                col.color[i]++;
            }
        }
        case ColoringKind::Injective: {
            for (int i = 0; i < n_; ++i) col.color[i] = i + 1;
            fn(col);
            return;
        }
        case ColoringKind::Randomized: {
            std::mt19937_64 rng(seed_);
            std::uniform_int_distribution<int> pick(1, c_);
            for (std::uint64_t t = 0; t < trials_; ++t) {
                for (int i = 0; i < n_; ++i) col.color[i] = pick(rng);
                if (!fn(col)) return;
            }
            return;
        }
    }
}

std::uint64_t randomized_trials_default(int n, int c, std::uint64_t cap) {
    double v = std::exp(static_cast<double>(c)) * c * std::log(static_cast<double>(std::max(n, 2)));
    if (!(v < static_cast<double>(cap))) return cap;
    return static_cast<std::uint64_t>(std::ceil(v));
}

bool phf_verify(const ColoringFamily& fam, int k, const Nat& budget) {
    int n = fam.n();
    if (k < 0 || k > n) throw ValidationError("subset size out of range");
    Nat subsets = 1;
    for (int i = 0; i < k; ++i) subsets = subsets * (n - i) / (i + 1);
    if (subsets > budget) throw BudgetExceeded("C(n,k) subsets exceed budget");

    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) return true;
    while (true) {
        bool covered = false;
        fam.for_each([&](const Coloring& col) {
            std::vector<char> seen(fam.c() + 1, 0);
            bool injective = true;
            for (int i : idx) {
                int ci = col.color[i];
                if (seen[ci]) {
                    injective = false;
                    break;
                }
                seen[ci] = 1;
            }
            if (injective) {
                covered = true;
                return false;
            }
            return true;
        });
        if (!covered) return false;
        // next k-combination of [0,n)
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace rsimple
