#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "rsimple/colorings.hpp"
#include "rsimple/graph.hpp"
#include "rsimple/longpath.hpp"
#include "rsimple/nat.hpp"

namespace rsimple {

struct ColoredDigraph {
    Digraph g;
    Coloring col;
};

// Colored digraph abstracting the distinct-arc structure of a solution:
// vertices are colors, at most ell arcs, no isolated vertices.
struct Topology {
    std::vector<int> colors;               // sorted, distinct
    std::vector<std::pair<int, int>> arcs; // (color, color), no duplicates

    int in_deg(int color) const;
    int out_deg(int color) const;
    bool weakly_connected() const;
};

// Arc multiplicities phi >= 1 satisfying the endpoint-balance constraints:
// every non-endpoint color has in = out <= r, the start has in+1 = out <= r,
// the end has in = out+1 <= r.
struct Enrichment {
    std::vector<Nat> phi;  // aligned with Topology::arcs
    int s_color = 0, t_color = 0;
    Nat total = 0;         // sum of phi
};

// Color quotient: one vertex per color present in g, an arc (a,b), a != b,
// whenever g has an arc between the classes.
struct QuotientDigraph {
    std::vector<int> colors;                // vertex i <-> colors[i]
    std::vector<std::pair<int, int>> arcs;  // pairs of color values
};

QuotientDigraph color_quotient(const ColoredDigraph& g);

struct EnumBudget {
    std::size_t nodes = 50'000'000;   // growth-tree nodes
    std::size_t emitted = 5'000'000;  // topologies yielded
};

// Yields every weakly connected, isolated-vertex-free sub-arc-set of the
// quotient with 1..ell arcs, each exactly once. Stops early when the callback
// returns false.
void enumerate_topologies(const QuotientDigraph& quotient, int ell,
                          const std::function<bool(const Topology&)>& emit,
                          const EnumBudget& budget = {});

// Maximizing enrichment with endpoint colors (i, j), or nullopt.
std::optional<Enrichment> enrich(const Topology& T, const Nat& r, int i, int j);

struct SolveEnrichedBudget {
    std::size_t nodes = 20'000'000;
};

// Annotated check: Yes when g has an r-simple (s,t)-path realizing (T,phi)
// arc-for-arc and visiting all of A; No when not even a color-level match
// visiting A exists; either answer in between. A Yes always certifies an
// r-simple (s,t)-path of size 1 + sum(phi).
bool solve_enriched(const ColoredDigraph& g, const Nat& r, int s, int t, const Topology& T,
                    const std::vector<Nat>& phi, const std::vector<int>& A,
                    const SolveEnrichedBudget& budget = {});

enum class ColoringChoice { Auto, Exhaustive, Injective, Randomized };

struct DirectedParams {
    std::optional<long long> bound_override;  // replaces 30*ceil(k/r)^2+1
    ColoringChoice coloring = ColoringChoice::Auto;
    std::uint64_t trials = 0;  // 0 = default formula
    std::uint64_t seed = 1;
    int jobs = 1;
    Nat exhaustive_budget = Nat(1) << 22;
    EnumBudget enum_budget{};
    SolveEnrichedBudget enriched_budget{};
    NicenessParams niceness{};
};

// Color-coded best (s,t)-walk estimate k*: g has an r-simple (s,t)-path of
// size k*, and no colorful r-simple (s,t)-path is larger. 0 = none found.
Nat colorful_rsls(const ColoredDigraph& g, const Nat& r, int s, int t, int ell,
                  const DirectedParams& params = {});

struct RslsResult {
    bool found_k_path = false;
    // maxima of (u,v)-walk sizes certified by the sweep (uncapped)
    std::vector<std::vector<Nat>> table;
    long long bound_used = 0;
};

// Reusable across calls with the same graph and r (e.g. varying k).
struct DirectedCache {
    struct Key {
        int comp_index;
        long long ell;
        int kind;
        int c_real;
        std::uint64_t trials, seed;
        std::string r_dec;
        bool operator<(const Key& o) const;
    };
    std::map<Key, std::vector<std::vector<Nat>>> tables;
};

// Full per-component color-coding sweep (Lemma-style loop over colorings and
// pairs); pre: g strongly connected and nice.
RslsResult rsls(const Digraph& g, const Nat& k, const Nat& r, const DirectedParams& params = {},
                DirectedCache* cache = nullptr, int comp_index = -1);

// Directed r-simple k-path decision. Sound for every parameter choice; also
// complete at the default bound with a perfect coloring family.
bool solve_directed(const Digraph& g, const Nat& k, const Nat& r,
                    const DirectedParams& params = {}, DirectedCache* cache = nullptr,
                    long long* bound_used = nullptr);

// Hub-and-cycles extremal family; the returned k_opt = 3r^2 - r is the
// exact maximum r-simple path size.
std::pair<Digraph, Nat> gen_tightness_directed(int r);

}  // namespace rsimple
