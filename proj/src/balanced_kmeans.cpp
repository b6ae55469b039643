#include "meshplan/balanced_kmeans.hpp"

#include "meshplan/errors.hpp"
#include "meshplan/min_cost_flow.hpp"
#include "meshplan/rng.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace meshplan {

namespace {

Index pick_index(Rng& rng, Index n)
{
    const auto i = static_cast<Index>(rng.uniform01() * static_cast<double>(n));
    return std::min(i, n - 1);
}

/// Nearest centroid per point, ties broken by lowest cluster id.
Eigen::VectorXi nearest_labels(const Eigen::Ref<const Matrix>& coords,
                               const Eigen::Ref<const Matrix>& centroids)
{
    const Index n = coords.rows();
    const Index k = centroids.rows();
    Eigen::VectorXi labels(n);
    for (Index i = 0; i < n; ++i) {
        int best = 0;
        double best_d = (coords.row(i) - centroids.row(0)).squaredNorm();
        for (Index j = 1; j < k; ++j) {
            const double d = (coords.row(i) - centroids.row(j)).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(j);
            }
        }
        labels(i) = best;
    }
    return labels;
}

double assignment_cost(const Eigen::Ref<const Matrix>& coords,
                       const Eigen::Ref<const Matrix>& centroids, const Eigen::VectorXi& labels)
{
    double cost = 0.0;
    for (Index i = 0; i < coords.rows(); ++i)
        cost += (coords.row(i) - centroids.row(labels(i))).squaredNorm();
    return cost;
}

/// Per-cluster means; clusters with no members keep their previous row.
Matrix cluster_means(const Eigen::Ref<const Matrix>& coords, const Eigen::VectorXi& labels,
                     const Eigen::Ref<const Matrix>& fallback)
{
    const Index k = fallback.rows();
    Matrix sums = Matrix::Zero(k, coords.cols());
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
    for (Index i = 0; i < coords.rows(); ++i) {
        sums.row(labels(i)) += coords.row(i);
        counts(labels(i)) += 1;
    }
    Matrix means(k, coords.cols());
    for (Index j = 0; j < k; ++j) {
        if (counts(j) > 0)
            means.row(j) = sums.row(j) / counts(j);
        else
            means.row(j) = fallback.row(j);
    }
    return means;
}

Matrix kmeans_pp_seed(const Eigen::Ref<const Matrix>& coords, int k, Rng& rng)
{
    const Index n = coords.rows();
    Matrix centroids(k, coords.cols());
    centroids.row(0) = coords.row(pick_index(rng, n));

    Vector dist2(n);
    for (Index i = 0; i < n; ++i)
        dist2(i) = (coords.row(i) - centroids.row(0)).squaredNorm();

    for (int c = 1; c < k; ++c) {
        const double total = dist2.sum();
        Index chosen;
        if (total > 0.0) {
            const double target = rng.uniform01() * total;
            double cumulative = 0.0;
            chosen = n - 1;
            for (Index i = 0; i < n; ++i) {
                cumulative += dist2(i);
                if (cumulative > target) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = pick_index(rng, n);  // all points already on centroids
        }
        centroids.row(c) = coords.row(chosen);
        for (Index i = 0; i < n; ++i)
            dist2(i) = std::min(dist2(i), (coords.row(i) - centroids.row(c)).squaredNorm());
    }
    return centroids;
}

/// Re-seed empty clusters from the points farthest to their assigned
/// centroid, one point per empty cluster.
void repair_empty_clusters(const Eigen::Ref<const Matrix>& coords, Eigen::VectorXi& labels,
                           Matrix& centroids)
{
    const Index n = coords.rows();
    const Index k = centroids.rows();
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
    for (Index i = 0; i < n; ++i) counts(labels(i)) += 1;

    for (Index j = 0; j < k; ++j) {
        if (counts(j) > 0) continue;
        Index farthest = -1;
        double worst = -1.0;
        for (Index i = 0; i < n; ++i) {
            if (counts(labels(i)) <= 1) continue;  // do not drain another cluster
            const double d = (coords.row(i) - centroids.row(labels(i))).squaredNorm();
            if (d > worst) {
                worst = d;
                farthest = i;
            }
        }
        if (farthest < 0) continue;
        counts(labels(farthest)) -= 1;
        labels(farthest) = static_cast<int>(j);
        counts(j) = 1;
        centroids.row(j) = coords.row(farthest);
    }
}

struct LloydResult {
    Matrix centroids;
    double inertia = 0.0;
};

LloydResult lloyd(const Eigen::Ref<const Matrix>& coords, int k, int max_iters, double tol,
                  Rng& rng)
{
    Matrix centroids = kmeans_pp_seed(coords, k, rng);
    Eigen::VectorXi labels;
    for (int iter = 0; iter < max_iters; ++iter) {
        labels = nearest_labels(coords, centroids);
        repair_empty_clusters(coords, labels, centroids);
        const Matrix updated = cluster_means(coords, labels, centroids);
        const double movement = (updated - centroids).rowwise().norm().maxCoeff();
        centroids = updated;
        if (movement <= tol) break;
    }
    labels = nearest_labels(coords, centroids);
    return {centroids, assignment_cost(coords, centroids, labels)};
}

}  // namespace

void validate(const ClusterConfig& cfg)
{
    if (cfg.k < 1) throw std::invalid_argument("cluster: k must be >= 1");
    if (cfg.capacity && *cfg.capacity < 1)
        throw std::invalid_argument("cluster: capacity must be >= 1");
    if (cfg.max_iters < 1) throw std::invalid_argument("cluster: max_iters must be >= 1");
    if (cfg.restarts < 1) throw std::invalid_argument("cluster: restarts must be >= 1");
    if (!(cfg.tol >= 0.0)) throw std::invalid_argument("cluster: tol must be >= 0");
}

int resolved_capacity(const ClusterConfig& cfg, Index n)
{
    if (cfg.capacity) return *cfg.capacity;
    return static_cast<int>((n + cfg.k - 1) / cfg.k);  // ceil(n/k)
}

Matrix kmeans_init(const Eigen::Ref<const Matrix>& coords, const ClusterConfig& cfg)
{
    validate(cfg);
    const Index n = coords.rows();
    if (n < cfg.k)
        throw InfeasibleError("cluster: fewer points (" + std::to_string(n) + ") than clusters (" +
                              std::to_string(cfg.k) + ")");

    Matrix best;
    double best_inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        LloydResult result = lloyd(coords, cfg.k, cfg.max_iters, cfg.tol, rng);
        if (result.inertia < best_inertia) {  // strict: ties keep the earliest restart
            best_inertia = result.inertia;
            best = std::move(result.centroids);
        }
    }
    return best;
}

Eigen::VectorXi transport_assign(const Eigen::Ref<const Matrix>& coords,
                                 const Eigen::Ref<const Matrix>& centroids, int capacity,
                                 int lower_bound)
{
    const Index n = coords.rows();
    const int k = static_cast<int>(centroids.rows());
    if (lower_bound < 0 || lower_bound > capacity)
        throw std::invalid_argument("cluster: require 0 <= lower_bound <= capacity");
    if (static_cast<std::int64_t>(capacity) * k < n)
        throw InfeasibleError("cluster: capacity * k < n, assignment infeasible");
    if (static_cast<std::int64_t>(lower_bound) * k > n)
        throw InfeasibleError("cluster: lower_bound * k > n, assignment infeasible");

    // Transportation network: every point ships one unit either into a
    // cluster's mandatory quota (lower_bound, modeled as cluster demand)
    // or through its remaining slack into the shared sink.
    const int point_base = 0;
    const int cluster_base = static_cast<int>(n);
    const int sink = static_cast<int>(n) + k;
    MinCostFlow flow(static_cast<int>(n) + k + 1);

    for (Index i = 0; i < n; ++i) flow.set_balance(point_base + static_cast<int>(i), 1);
    for (int j = 0; j < k; ++j) flow.set_balance(cluster_base + j, -lower_bound);
    flow.set_balance(sink, -(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(lower_bound) * k));

    std::vector<int> arc_of(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (Index i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            const double cost = (coords.row(i) - centroids.row(j)).squaredNorm();
            arc_of[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
                   static_cast<std::size_t>(j)] =
                flow.add_arc(point_base + static_cast<int>(i), cluster_base + j, 1, cost);
        }
    for (int j = 0; j < k; ++j)
        flow.add_arc(cluster_base + j, sink, capacity - lower_bound, 0.0);

    flow.solve();

    Eigen::VectorXi labels(n);
    for (Index i = 0; i < n; ++i) {
        int assigned = -1;
        for (int j = 0; j < k; ++j)
            if (flow.flow_on(arc_of[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
                                    static_cast<std::size_t>(j)]) > 0) {
                assigned = j;
                break;
            }
        if (assigned < 0) throw NumericalError("cluster: transportation solve left a point unassigned");
        labels(i) = assigned;
    }
    return labels;
}

Eigen::VectorXi greedy_assign(const Eigen::Ref<const Matrix>& coords,
                              const Eigen::Ref<const Matrix>& centroids, int capacity)
{
    const Index n = coords.rows();
    const int k = static_cast<int>(centroids.rows());
    if (static_cast<std::int64_t>(capacity) * k < n)
        throw InfeasibleError("cluster: capacity * k < n, assignment infeasible");

    struct Pair {
        double dist2;
        int cluster;
        Index point;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (Index i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j)
            pairs.push_back({(coords.row(i) - centroids.row(j)).squaredNorm(), j, i});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return std::tie(a.dist2, a.cluster, a.point) < std::tie(b.dist2, b.cluster, b.point);
    });

    Eigen::VectorXi labels = Eigen::VectorXi::Constant(n, -1);
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    Index assigned = 0;
    for (const Pair& p : pairs) {
        if (assigned == n) break;
        if (labels(p.point) >= 0 || counts[static_cast<std::size_t>(p.cluster)] >= capacity)
            continue;
        labels(p.point) = p.cluster;
        counts[static_cast<std::size_t>(p.cluster)] += 1;
        ++assigned;
    }
    return labels;
}

ClusterAssignment balanced_assign(const Eigen::Ref<const Matrix>& coords,
                                  const Eigen::Ref<const Matrix>& centroids,
                                  const ClusterConfig& cfg)
{
    validate(cfg);
    if (centroids.rows() != cfg.k)
        throw std::invalid_argument("cluster: centroid count does not match cfg.k");
    const Index n = coords.rows();
    const int capacity = resolved_capacity(cfg, n);
    const int lower_bound =
        (cfg.enforce_lower_bound && cfg.assign_mode == AssignMode::exact)
            ? static_cast<int>(n / cfg.k)
            : 0;

    auto solve = [&](const Eigen::Ref<const Matrix>& c) {
        return cfg.assign_mode == AssignMode::exact
                   ? transport_assign(coords, c, capacity, lower_bound)
                   : greedy_assign(coords, c, capacity);
    };
    auto check_capacity = [&](const Eigen::VectorXi& labels) {
        Eigen::VectorXi counts = Eigen::VectorXi::Zero(cfg.k);
        for (Index i = 0; i < n; ++i) counts(labels(i)) += 1;
        if (counts.maxCoeff() > capacity)
            throw std::logic_error("cluster: capacity violated by assignment step");
    };

    ClusterAssignment out;
    Matrix current = centroids;
    out.labels = solve(current);
    check_capacity(out.labels);
    out.inertia_history.push_back(assignment_cost(coords, current, out.labels));

    for (int iter = 1; iter < cfg.max_iters; ++iter) {
        current = cluster_means(coords, out.labels, current);
        Eigen::VectorXi next = solve(current);
        check_capacity(next);
        out.inertia_history.push_back(assignment_cost(coords, current, next));
        const bool stable = (next == out.labels);
        out.labels = std::move(next);
        if (stable) break;
    }

    out.centroids = cluster_means(coords, out.labels, current);
    out.inertia = assignment_cost(coords, out.centroids, out.labels);
    return out;
}

ClusterAssignment cluster(const Embedding<double>& embedding, const ClusterConfig& cfg)
{
    validate(cfg);
    const Index n = embedding.coords.rows();
    if (static_cast<std::int64_t>(resolved_capacity(cfg, n)) * cfg.k < n)
        throw InfeasibleError("cluster: capacity * k < n, clustering infeasible");
    const Matrix centroids = kmeans_init(embedding.coords, cfg);
    return balanced_assign(embedding.coords, centroids, cfg);
}

}  // namespace meshplan
