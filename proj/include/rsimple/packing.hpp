#pragma once

#include <cstdint>
#include <vector>

#include "rsimple/nat.hpp"

namespace rsimple {

// p-Set (r,q)-Packing instance. Sets are subsets of [0, universe) of size at
// most p; mult holds exact copy counts (>= 1).
struct PackingInstance {
    int universe = 0;
    int p = 0;
    Nat q = 0;
    Nat r = 1;
    std::vector<std::vector<int>> sets;
    std::vector<Nat> mult;

    Nat kappa() const { return ceil_div(Nat(p) * q, r); }
    Nat total_copies() const;
    void validate() const;
};

// Discards elements occurring at most r times; emptied sets are removed and q
// is reduced by their multiplicity. Answer-preserving, single pass suffices.
PackingInstance rule1(const PackingInstance& inst);

struct RepFamilyCertificate {
    std::vector<int> selected;  // indices into the input family
    Nat bound;                  // C(p+kappa, p)
};

// Representative subfamily over the uniform matroid: for every set B of size
// at most kappa, some member of the input avoids B iff some selected member
// does. Exterior-algebra (Vandermonde minor) construction over a prime field.
RepFamilyCertificate representative_family(const std::vector<std::vector<int>>& family, int p,
                                           int kappa, int universe);

// Pads to p-uniform with fresh dummies, extracts q disjoint representative
// families, and discards every copy outside their union.
PackingInstance rule2(const PackingInstance& inst, int kappa,
                      std::size_t copy_budget = 2'000'000);

struct PackingBudget {
    std::size_t dfs_nodes = 50'000'000;
    std::size_t copies = 2'000'000;
    int max_kappa = 16;
};

bool solve_packing(const PackingInstance& inst, const PackingBudget& budget = {});

struct KernelResult {
    PackingInstance kernel;   // multiplicities clamped at r
    Nat bits;                 // dense encoding size (n'+1)^p * ceil(log2(r+1))
    Nat distinct_types = 0;
};

KernelResult kernelize(const PackingInstance& inst, const PackingBudget& budget = {});

Nat binomial(int n, int k);

}  // namespace rsimple
