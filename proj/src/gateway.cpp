#include "meshplan/gateway.hpp"

#include <stdexcept>
#include <string>

namespace meshplan {

std::vector<ClusterGateways> select_gateways(const Vector& scores, const Eigen::VectorXi& labels)
{
    const Index n = labels.size();
    if (scores.size() != n) throw std::invalid_argument("gateway: scores/labels size mismatch");
    const int k = n > 0 ? labels.maxCoeff() + 1 : 0;

    std::vector<ClusterGateways> clusters(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) clusters[static_cast<std::size_t>(c)].cluster_id = c;
    for (Index i = 0; i < n; ++i) {
        if (labels(i) < 0) throw std::invalid_argument("gateway: negative cluster label");
        clusters[static_cast<std::size_t>(labels(i))].members.push_back(i);
    }

    for (auto& cluster : clusters) {
        if (cluster.members.empty())
            throw std::invalid_argument("gateway: empty cluster " +
                                        std::to_string(cluster.cluster_id));
        cluster.member_scores.resize(static_cast<Index>(cluster.members.size()));
        for (std::size_t m = 0; m < cluster.members.size(); ++m)
            cluster.member_scores(static_cast<Index>(m)) = scores(cluster.members[m]);

        // Members are ascending, so strict comparisons break ties toward
        // the lowest node index.
        Index best = cluster.members[0];
        for (Index node : cluster.members)
            if (scores(node) > scores(best)) best = node;
        cluster.primary = best;

        std::optional<Index> second;
        for (Index node : cluster.members) {
            if (node == best) continue;
            if (!second || scores(node) > scores(*second)) second = node;
        }
        cluster.secondary = second;  // nullopt for singleton clusters
    }
    return clusters;
}

GatewayPlan build_gateway_plan(const SimilarityMatrix& S, const Eigen::VectorXi& labels)
{
    GatewayPlan plan;
    plan.scores = gateway_scores(S.values, labels);
    plan.clusters = select_gateways(plan.scores, labels);

    for (const auto& cluster : plan.clusters) {
        plan.gateway_set.push_back(cluster.primary);
        if (cluster.secondary) plan.gateway_set.push_back(*cluster.secondary);
    }

    plan.gateway_similarity = restrict_to_gateways(S.values, plan.gateway_set);
    plan.inter_cluster_restricted =
        restrict_to_gateways(inter_cluster_filter(S.values, labels), plan.gateway_set);
    return plan;
}

}  // namespace meshplan
