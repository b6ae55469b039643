#pragma once

#include "meshplan/spectral.hpp"
#include "meshplan/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace meshplan {

/// How points are placed into capacity-limited clusters: an exact
/// min-cost transportation solve, or a first-fit pass over globally
/// distance-sorted (point, centroid) pairs.
enum class AssignMode { exact, greedy };

struct ClusterConfig {
    int k = 1;
    std::optional<int> capacity;  // max nodes per cluster; default ceil(n/k)
    int max_iters = 100;
    double tol = 1e-6;      // centroid movement threshold, embedding units
    std::uint64_t seed = 0;
    int restarts = 10;
    AssignMode assign_mode = AssignMode::exact;
    bool enforce_lower_bound = true;  // per-cluster minimum floor(n/k); exact mode only
};

void validate(const ClusterConfig& cfg);

int resolved_capacity(const ClusterConfig& cfg, Index n);

struct ClusterAssignment {
    Eigen::VectorXi labels;  // length n, values in [0, k)
    Matrix centroids;        // k x d
    double inertia = 0.0;    // total within-cluster squared distance
    std::vector<double> inertia_history;  // assignment cost after each constrained solve
};

/// Centroids from standard unconstrained k-means: k-means++ seeding,
/// Lloyd iterations, best of cfg.restarts by inertia. Deterministic
/// given cfg.seed.
Matrix kmeans_init(const Eigen::Ref<const Matrix>& coords, const ClusterConfig& cfg);

/// One exact capacity-constrained assignment at fixed centroids, solved
/// as a min-cost transportation problem. Every cluster receives at least
/// `lower_bound` and at most `capacity` points.
Eigen::VectorXi transport_assign(const Eigen::Ref<const Matrix>& coords,
                                 const Eigen::Ref<const Matrix>& centroids, int capacity,
                                 int lower_bound);

/// First-fit assignment under capacity: all (point, centroid) pairs
/// sorted by squared distance, ties by (cluster id, node index). Ignores
/// lower bounds.
Eigen::VectorXi greedy_assign(const Eigen::Ref<const Matrix>& coords,
                              const Eigen::Ref<const Matrix>& centroids, int capacity);

/// Capacity-constrained assignment iterated with centroid updates until
/// the labels are stable or cfg.max_iters solves have run.
ClusterAssignment balanced_assign(const Eigen::Ref<const Matrix>& coords,
                                  const Eigen::Ref<const Matrix>& centroids,
                                  const ClusterConfig& cfg);

/// Full balanced k-means on the spectral coordinates: kmeans_init
/// followed by balanced_assign.
ClusterAssignment cluster(const Embedding<double>& embedding, const ClusterConfig& cfg);

}  // namespace meshplan
