#pragma once

#include <optional>
#include <vector>

#include "rsimple/graph.hpp"
#include "rsimple/nat.hpp"

namespace rsimple {

struct OracleBudget {
    // Upper bound on n * (clamp+1)^n visit states (bitset bits).
    Nat states = Nat(1) << 31;
};

struct WalkCheck {
    bool valid = false;
    Nat size = 0;
};

// Maximum size of an r-simple path, truncated at cap. Exhaustive search over
// visit states (current vertex, per-vertex counts clamped at min(r, cap)),
// graded by walk size; every reachable state is enumerated exactly once.
Nat brute_rsimple_max(const Digraph& g, const Nat& r, const Nat& cap,
                      const OracleBudget& budget = {}, Walk* witness = nullptr);
Nat brute_rsimple_max(const UGraph& g, const Nat& r, const Nat& cap,
                      const OracleBudget& budget = {}, Walk* witness = nullptr);

// Largest size of an r-simple (s,t)-path, truncated at cap; nullopt when no
// (s,t)-walk exists.
std::optional<Nat> brute_rsimple_st_max(const Digraph& g, const Nat& r, int s, int t,
                                        const Nat& cap, const OracleBudget& budget = {},
                                        Walk* witness = nullptr);
std::optional<Nat> brute_rsimple_st_max(const UGraph& g, const Nat& r, int s, int t,
                                        const Nat& cap, const OracleBudget& budget = {},
                                        Walk* witness = nullptr);

// All-t row for a fixed s (one search, used by equivalence tests).
std::vector<std::optional<Nat>> brute_rsimple_st_row(const Digraph& g, const Nat& r, int s,
                                                     const Nat& cap, const OracleBudget& budget = {});

WalkCheck verify_walk(const Digraph& g, const Walk& w, const Nat& r);
WalkCheck verify_walk(const UGraph& g, const Walk& w, const Nat& r);

// Ground-truth p-Set (r,q)-Packing: enumerate all q-subcollections.
bool brute_packing(int universe, const std::vector<std::vector<int>>& sets, const Nat& q,
                   const Nat& r, const Nat& budget = Nat(50'000'000));

}  // namespace rsimple
