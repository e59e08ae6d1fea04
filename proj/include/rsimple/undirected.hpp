#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "rsimple/colorings.hpp"
#include "rsimple/directed.hpp"
#include "rsimple/graph.hpp"
#include "rsimple/longpath.hpp"
#include "rsimple/nat.hpp"

namespace rsimple {

struct ColoredUGraph {
    UGraph g;
    Coloring col;
};

// Per-color visit counts of the short spanning walk; aligned with an explicit
// list of active colors, each entry in [0, r], total at most 2b.
struct OccurrenceSequence {
    std::vector<std::int64_t> d;
    std::int64_t sum() const;
};

std::vector<OccurrenceSequence> enumerate_occurrence_sequences(
    const std::vector<int>& active_colors, const Nat& r, std::int64_t two_b,
    std::size_t budget = 50'000'000);

// --------------------------------------------------------------------------
// Treewidth-2 component DP (hidden tree decomposition, bags of size <= 3).

class Tw2Cache;  // shares evaluated tables across queries with equal caps

struct Tw2Budget {
    std::size_t states = 8'000'000;
};

// Largest edge count (with multiplicities) of a colorful, connected, even
// multigraph of treewidth <= 2 containing v_star, colors drawn from C, and
// per-vertex degree at most 2(r - d_color). nullopt = no such multigraph.
std::optional<std::int64_t> tw2_component_max(const ColoredUGraph& g,
                                              const std::vector<int>& C, int v_star,
                                              const OccurrenceSequence& dbar,
                                              const std::vector<int>& active, const Nat& r,
                                              Tw2Cache* cache = nullptr, const Tw2Budget& budget = {});

// Decides whether a good pair (walk, tw-2 multigraph) complying with dbar
// exists: two-level DP over (end vertex, remaining sequence, color budget).
bool walk_tw2_partition(const ColoredUGraph& g, const Nat& k, const Nat& r,
                        const OccurrenceSequence& dbar, const std::vector<int>& active,
                        Tw2Cache* cache = nullptr, const Tw2Budget& budget = {});

// --------------------------------------------------------------------------
// Special pipeline (r^2 > k).

struct MatchingShortcut {
    bool yes = false;
    std::vector<int> cover;  // endpoints of a maximal matching when not yes
};

MatchingShortcut matching_shortcut(const UGraph& g, const Nat& k, const Nat& r);

// Walk visiting color i exactly d_i times for every i.
bool walk_fit_exists(const ColoredUGraph& g, const OccurrenceSequence& dbar,
                     const std::vector<int>& active, std::size_t state_budget = 100'000'000);

enum class EdgeFitVariant {
    DoubleDeficit,  // threshold sum(phi) >= 2(k - sum d)
    Deficit,        // threshold sum(phi) >= k - sum d
};

struct FitSpec {
    const ColoredUGraph* g = nullptr;
    OccurrenceSequence dbar;
    std::vector<int> active;
    std::vector<int> cover;
    Nat k, r;
    EdgeFitVariant variant = EdgeFitVariant::Deficit;
};

// Even-degree multiplicity function phi meeting the degree caps and the size
// threshold; decided by one min-cost flow.
bool edge_fit_exists(const FitSpec& spec);

struct SpecialBudget {
    std::size_t walk_states = 200'000'000;  // bits of the count-vector bitset
    std::size_t sequences = 80'000'000;
};

bool special_colorful(const ColoredUGraph& g, const Nat& k, const Nat& r,
                      const std::vector<int>& cover, EdgeFitVariant variant,
                      const SpecialBudget& budget = {}, int jobs = 1);

// --------------------------------------------------------------------------
// Drivers

enum class UndirectedPipeline { Auto, General, Special };

struct UndirectedParams {
    std::optional<long long> bound_override;  // replaces 30*ceil(k/r)+1
    UndirectedPipeline pipeline = UndirectedPipeline::Auto;
    ColoringChoice coloring = ColoringChoice::Auto;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    int jobs = 1;
    Nat exhaustive_budget = Nat(1) << 22;
    EdgeFitVariant edge_fit = EdgeFitVariant::Deficit;
    Tw2Budget tw2{};
    SpecialBudget special{};
    std::size_t sequence_budget = 50'000'000;
    NicenessParams niceness{};
};

// One coloring loop of the general pipeline on a connected nice component.
bool colorful_wrapper(const UGraph& g, const Nat& k, const Nat& r, long long b,
                      const ColoringFamily& fam, const UndirectedParams& params = {});

bool solve_undirected(const UGraph& g, const Nat& k, const Nat& r,
                      const UndirectedParams& params = {}, long long* bound_used = nullptr);

// Subdivided torus grid with a pendant on every vertex (10*c^2 vertices).
UGraph gen_grid_pendant(int c, const Nat& r);

// Cache shared across occurrence sequences; owns evaluated tw2 tables.
class Tw2Cache {
public:
    struct Instance;
    std::map<std::string, std::shared_ptr<Instance>> instances;
};

}  // namespace rsimple
