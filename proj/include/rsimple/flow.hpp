#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rsimple/nat.hpp"

namespace rsimple {

struct FlowArc {
    int from = 0, to = 0;
    Nat lower = 0;
    Nat upper = 0;              // ignored when infinite_upper
    bool infinite_upper = false;
    std::int64_t cost = 0;
};

struct FlowNetwork {
    int nodes = 0;
    std::vector<FlowArc> arcs;

    int add(int from, int to, Nat lower, Nat upper, std::int64_t cost = 0) {
        arcs.push_back({from, to, std::move(lower), std::move(upper), false, cost});
        return static_cast<int>(arcs.size()) - 1;
    }
    int add_inf(int from, int to, Nat lower, std::int64_t cost = 0) {
        arcs.push_back({from, to, std::move(lower), 0, true, cost});
        return static_cast<int>(arcs.size()) - 1;
    }
};

struct MaxFlowResult {
    Nat value;
    std::vector<Nat> flow;  // per arc, aligned with net.arcs
};

struct MinCostResult {
    Nat cost;               // total cost (costs here are always >= 0 overall)
    std::vector<Nat> flow;
};

struct CirculationResult {
    Nat objective_total;
    std::vector<Nat> flow;
};

// Maximum integral s->t flow; requires all lower bounds zero.
MaxFlowResult max_flow(const FlowNetwork& net, int s, int t);

// Minimum total cost over integral flows of value exactly F respecting
// lower/upper bounds; nullopt when infeasible. Capacity scaling keeps the
// running time polylogarithmic in the capacities.
std::optional<MinCostResult> min_cost_flow(const FlowNetwork& net, int s, int t, const Nat& F);

// Integral circulation meeting all lower bounds and maximizing the total flow
// over the designated arcs; nullopt when no feasible circulation exists.
std::optional<CirculationResult> max_value_circulation_with_lower_bounds(
    const FlowNetwork& net, const std::vector<int>& objective_arcs);

}  // namespace rsimple
