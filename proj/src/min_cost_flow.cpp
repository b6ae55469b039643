#include "meshplan/min_cost_flow.hpp"

#include "meshplan/errors.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace meshplan {

MinCostFlow::MinCostFlow(int node_count)
    : graph_(static_cast<std::size_t>(node_count)),
      balance_(static_cast<std::size_t>(node_count), 0)
{
    if (node_count <= 0) throw std::invalid_argument("min_cost_flow: node_count must be > 0");
}

int MinCostFlow::add_arc(int from, int to, std::int64_t capacity, double cost)
{
    const int n = static_cast<int>(graph_.size());
    if (from < 0 || from >= n || to < 0 || to >= n || from == to)
        throw std::invalid_argument("min_cost_flow: bad arc endpoints");
    if (capacity < 0 || cost < 0.0)
        throw std::invalid_argument("min_cost_flow: capacity and cost must be >= 0");

    auto& fwd_list = graph_[static_cast<std::size_t>(from)];
    auto& rev_list = graph_[static_cast<std::size_t>(to)];
    fwd_list.push_back({to, capacity, cost, static_cast<int>(rev_list.size())});
    rev_list.push_back({from, 0, -cost, static_cast<int>(fwd_list.size() - 1)});

    arc_refs_.emplace_back(from, static_cast<int>(fwd_list.size() - 1));
    arc_capacity_.push_back(capacity);
    return static_cast<int>(arc_refs_.size()) - 1;
}

void MinCostFlow::set_balance(int node, std::int64_t amount)
{
    balance_.at(static_cast<std::size_t>(node)) = amount;
}

double MinCostFlow::solve()
{
    const int n = static_cast<int>(graph_.size());
    std::int64_t net = 0;
    for (std::int64_t b : balance_) net += b;
    if (net != 0) throw std::invalid_argument("min_cost_flow: balances must sum to zero");

    std::vector<std::int64_t> excess = balance_;
    std::vector<double> potential(static_cast<std::size_t>(n), 0.0);
    std::vector<double> dist(static_cast<std::size_t>(n));
    std::vector<int> prev_node(static_cast<std::size_t>(n));
    std::vector<int> prev_arc(static_cast<std::size_t>(n));
    double total_cost = 0.0;

    while (true) {
        int source = -1;
        for (int v = 0; v < n; ++v)
            if (excess[static_cast<std::size_t>(v)] > 0) {
                source = v;
                break;
            }
        if (source < 0) break;

        // Shortest path tree from the source over residual arcs, using
        // reduced costs so arc weights stay non-negative (up to rounding).
        const double inf = std::numeric_limits<double>::infinity();
        std::fill(dist.begin(), dist.end(), inf);
        dist[static_cast<std::size_t>(source)] = 0.0;
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
        queue.emplace(0.0, source);
        while (!queue.empty()) {
            const auto [d, v] = queue.top();
            queue.pop();
            if (d > dist[static_cast<std::size_t>(v)]) continue;
            const auto& arcs = graph_[static_cast<std::size_t>(v)];
            for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
                const Arc& arc = arcs[static_cast<std::size_t>(a)];
                if (arc.capacity <= 0) continue;
                const double reduced = arc.cost + potential[static_cast<std::size_t>(v)] -
                                       potential[static_cast<std::size_t>(arc.to)];
                const double candidate = d + std::max(reduced, 0.0);
                if (candidate < dist[static_cast<std::size_t>(arc.to)]) {
                    dist[static_cast<std::size_t>(arc.to)] = candidate;
                    prev_node[static_cast<std::size_t>(arc.to)] = v;
                    prev_arc[static_cast<std::size_t>(arc.to)] = a;
                    queue.emplace(candidate, arc.to);
                }
            }
        }

        int sink = -1;
        double best = inf;
        for (int v = 0; v < n; ++v)
            if (excess[static_cast<std::size_t>(v)] < 0 &&
                dist[static_cast<std::size_t>(v)] < best) {
                best = dist[static_cast<std::size_t>(v)];
                sink = v;
            }
        if (sink < 0) throw InfeasibleError("min_cost_flow: supply cannot reach demand");

        // Johnson update; unreached nodes move by the full sink distance,
        // which keeps every residual reduced cost non-negative.
        for (int v = 0; v < n; ++v)
            potential[static_cast<std::size_t>(v)] +=
                std::min(dist[static_cast<std::size_t>(v)], best);

        std::int64_t amount =
            std::min(excess[static_cast<std::size_t>(source)], -excess[static_cast<std::size_t>(sink)]);
        for (int v = sink; v != source; v = prev_node[static_cast<std::size_t>(v)]) {
            const Arc& arc = graph_[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                                   [static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(v)])];
            amount = std::min(amount, arc.capacity);
        }
        for (int v = sink; v != source; v = prev_node[static_cast<std::size_t>(v)]) {
            Arc& arc = graph_[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                             [static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(v)])];
            arc.capacity -= amount;
            graph_[static_cast<std::size_t>(arc.to)][static_cast<std::size_t>(arc.reverse)].capacity +=
                amount;
            total_cost += static_cast<double>(amount) * arc.cost;
        }
        excess[static_cast<std::size_t>(source)] -= amount;
        excess[static_cast<std::size_t>(sink)] += amount;
    }

    return total_cost;
}

std::int64_t MinCostFlow::flow_on(int arc_id) const
{
    const auto [node, offset] = arc_refs_.at(static_cast<std::size_t>(arc_id));
    const Arc& arc = graph_[static_cast<std::size_t>(node)][static_cast<std::size_t>(offset)];
    return arc_capacity_[static_cast<std::size_t>(arc_id)] - arc.capacity;
}

}  // namespace meshplan
