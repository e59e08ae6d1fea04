#pragma once

#include <cstdint>

#include "rsimple/colorings.hpp"
#include "rsimple/graph.hpp"
#include "rsimple/nat.hpp"

namespace rsimple {

// True iff g has a simple s->t path on at least ell vertices, provided the
// family contains a coloring injective on the vertex set of some witness
// path (always the case for the Injective backend). One-sided otherwise:
// a true answer is always correct.
bool detect_long_path(const Digraph& g, int s, int t, int ell, const ColoringFamily& fam);

// Same test with free endpoints.
bool detect_long_path_any(const Digraph& g, int ell, const ColoringFamily& fam);

enum class Niceness { Nice, NotNice };

struct NicenessParams {
    int exact_n_cap = 22;            // up to here use one injective coloring (exact)
    std::uint64_t trials_cap = 4096; // randomized fallback beyond the cap
    std::uint64_t seed = 1;
};

// NotNice iff g (strongly connected) has a cycle of length >= k/r or a simple
// path on >= 2k/r vertices; NotNice instances are Yes-instances.
Niceness niceness_directed(const Digraph& g, const Nat& k, const Nat& r,
                           const NicenessParams& params = {});

// NotNice iff g (connected) has a simple path of length (edge count) >= k/r.
Niceness niceness_undirected(const UGraph& g, const Nat& k, const Nat& r,
                             const NicenessParams& params = {});

}  // namespace rsimple
