#pragma once

#include "meshplan/types.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace meshplan {

/// Gateway designations for one cluster. `members` lists the cluster's
/// node indices ascending; `member_scores` is aligned with it.
struct ClusterGateways {
    int cluster_id = 0;
    Index primary = -1;
    std::optional<Index> secondary;
    std::vector<Index> members;
    Vector member_scores;
};

/// Gateway designations plus the reduced matrices. The gateway set is
/// ordered by ascending cluster id, primary before secondary, so the
/// matrix layout is reproducible.
struct GatewayPlan {
    std::vector<ClusterGateways> clusters;
    Vector scores;  // node-indexed gateway scores for the whole graph
    std::vector<Index> gateway_set;
    Matrix gateway_similarity;       // S restricted to the gateway set
    Matrix inter_cluster_restricted; // intra-cluster-zeroed S, restricted
};

/// Per-node sum of similarity to every node outside its own cluster.
/// Plain ascending-j accumulation; the order is part of the contract so
/// an independent double loop reproduces the values bit for bit.
template <typename Derived>
DenseVector<typename Derived::Scalar> gateway_scores(const Eigen::MatrixBase<Derived>& S,
                                                     const Eigen::VectorXi& labels)
{
    using Scalar = typename Derived::Scalar;
    const Index n = S.rows();
    if (labels.size() != n) throw std::invalid_argument("gateway: labels/matrix size mismatch");

    DenseVector<Scalar> scores = DenseVector<Scalar>::Zero(n);
    for (Index i = 0; i < n; ++i) {
        Scalar total(0);
        for (Index j = 0; j < n; ++j)
            if (labels(j) != labels(i)) total += S(i, j);
        scores(i) = total;
    }
    return scores;
}

/// Primary = highest score in the cluster, secondary = second highest
/// when the cluster has at least two members. Ties break to the lowest
/// node index.
std::vector<ClusterGateways> select_gateways(const Vector& scores, const Eigen::VectorXi& labels);

/// Submatrix gather S[set, set].
template <typename Derived>
DenseMatrix<typename Derived::Scalar> restrict_to_gateways(const Eigen::MatrixBase<Derived>& S,
                                                           const std::vector<Index>& gateway_set)
{
    const Index n = S.rows();
    const auto m = static_cast<Index>(gateway_set.size());
    for (std::size_t a = 0; a < gateway_set.size(); ++a) {
        if (gateway_set[a] < 0 || gateway_set[a] >= n)
            throw std::invalid_argument("gateway: index out of range in gateway set");
        for (std::size_t b = a + 1; b < gateway_set.size(); ++b)
            if (gateway_set[a] == gateway_set[b])
                throw std::invalid_argument("gateway: duplicate index in gateway set");
    }

    DenseMatrix<typename Derived::Scalar> out(m, m);
    for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b)
            out(a, b) = S(gateway_set[static_cast<std::size_t>(a)],
                          gateway_set[static_cast<std::size_t>(b)]);
    return out;
}

/// Copy of S with intra-cluster entries zeroed.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> inter_cluster_filter(const Eigen::MatrixBase<Derived>& S,
                                                           const Eigen::VectorXi& labels)
{
    using Scalar = typename Derived::Scalar;
    const Index n = S.rows();
    if (labels.size() != n) throw std::invalid_argument("gateway: labels/matrix size mismatch");

    DenseMatrix<Scalar> out(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            out(i, j) = labels(i) != labels(j) ? S(i, j) : Scalar(0);
    return out;
}

/// Scores, designations and both reduced matrices in one pass.
GatewayPlan build_gateway_plan(const SimilarityMatrix& S, const Eigen::VectorXi& labels);

}  // namespace meshplan
