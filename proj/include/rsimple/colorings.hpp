#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "rsimple/graph.hpp"
#include "rsimple/nat.hpp"

namespace rsimple {

enum class ColoringKind { Exhaustive, Injective, Randomized };

// A restartable family of colorings [0,n) -> [1,c]. Iteration is side-effect
// free; clones may be walked concurrently. Randomized families are
// deterministic given the seed.
class ColoringFamily {
public:
    static ColoringFamily exhaustive(int n, int c, const Nat& budget);
    static ColoringFamily injective(int n, int c);
    static ColoringFamily randomized(int n, int c, std::uint64_t trials, std::uint64_t seed);

    int n() const { return n_; }
    int c() const { return c_; }
    ColoringKind kind() const { return kind_; }
    Nat size() const;

    // Visits every member; stops early when fn returns false.
    void for_each(const std::function<bool(const Coloring&)>& fn) const;

private:
    ColoringFamily(ColoringKind kind, int n, int c) : kind_(kind), n_(n), c_(c) {}

    ColoringKind kind_;
    int n_, c_;
    std::uint64_t trials_ = 0, seed_ = 0;
};

// Default trial count ceil(e^c * c * ln(max(n,2))), clamped to cap.
std::uint64_t randomized_trials_default(int n, int c, std::uint64_t cap);

// Exhaustively checks the perfect-hash property for subset size k.
bool phf_verify(const ColoringFamily& fam, int k, const Nat& budget);

}  // namespace rsimple
