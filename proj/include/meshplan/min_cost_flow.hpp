#pragma once

#include <cstdint>
#include <vector>

namespace meshplan {

/// Minimum-cost flow via successive shortest paths with node potentials
/// (Dijkstra on reduced costs). Costs are doubles, capacities and
/// supplies are integral. Sized for the transportation instances here:
/// a few hundred nodes, a few thousand arcs.
class MinCostFlow {
public:
    explicit MinCostFlow(int node_count);

    /// Arc with the given capacity and per-unit cost; returns an arc id
    /// usable with flow_on(). Costs must be >= 0.
    int add_arc(int from, int to, std::int64_t capacity, double cost);

    /// Positive = supply, negative = demand. Net balance must be zero.
    void set_balance(int node, std::int64_t amount);

    /// Routes all supply; returns total cost. Throws InfeasibleError when
    /// some supply cannot reach a demand.
    double solve();

    std::int64_t flow_on(int arc_id) const;

private:
    struct Arc {
        int to;
        std::int64_t capacity;  // residual
        double cost;
        int reverse;  // index of the reverse arc in graph_[to]
    };

    std::vector<std::vector<Arc>> graph_;
    std::vector<std::int64_t> balance_;
    std::vector<std::pair<int, int>> arc_refs_;       // arc id -> (node, offset)
    std::vector<std::int64_t> arc_capacity_;          // original capacities
};

}  // namespace meshplan
