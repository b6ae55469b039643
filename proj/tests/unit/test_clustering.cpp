#include "meshplan/balanced_kmeans.hpp"

#include "meshplan/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

using meshplan::AssignMode;
using meshplan::ClusterAssignment;
using meshplan::ClusterConfig;
using meshplan::Index;
using meshplan::InfeasibleError;

namespace {

meshplan::Matrix column(std::initializer_list<double> values)
{
    meshplan::Matrix m(static_cast<Index>(values.size()), 1);
    Index i = 0;
    for (double v : values) m(i++, 0) = v;
    return m;
}

Eigen::VectorXi count_sizes(const Eigen::VectorXi& labels, int k)
{
    Eigen::VectorXi sizes = Eigen::VectorXi::Zero(k);
    for (Index i = 0; i < labels.size(); ++i) sizes(labels(i)) += 1;
    return sizes;
}

double labeled_cost(const meshplan::Matrix& coords, const meshplan::Matrix& centroids,
                    const Eigen::VectorXi& labels)
{
    double cost = 0.0;
    for (Index i = 0; i < coords.rows(); ++i)
        cost += (coords.row(i) - centroids.row(labels(i))).squaredNorm();
    return cost;
}

/// Exhaustive minimum assignment cost at fixed centroids over every
/// label vector satisfying the size bounds. Feasible only for tiny n, k.
double exhaustive_best_cost(const meshplan::Matrix& coords, const meshplan::Matrix& centroids,
                            int capacity, int lower_bound)
{
    const Index n = coords.rows();
    const int k = static_cast<int>(centroids.rows());
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<int> sizes(static_cast<std::size_t>(k), 0);
        for (int l : labels) sizes[static_cast<std::size_t>(l)] += 1;
        const bool feasible =
            std::all_of(sizes.begin(), sizes.end(),
                        [&](int s) { return s >= lower_bound && s <= capacity; });
        if (feasible) {
            double cost = 0.0;
            for (Index i = 0; i < n; ++i)
                cost += (coords.row(i) - centroids.row(labels[static_cast<std::size_t>(i)]))
                            .squaredNorm();
            best = std::min(best, cost);
        }
        Index digit = 0;
        while (digit < n && ++labels[static_cast<std::size_t>(digit)] == k) {
            labels[static_cast<std::size_t>(digit)] = 0;
            ++digit;
        }
        if (digit == n) break;
    }
    return best;
}

/// Cost of the best size-constrained bipartition scored against the
/// cluster means (not fixed centroids); brute force over subsets.
std::pair<double, std::vector<int>> best_bipartition(const meshplan::Matrix& coords, int capacity)
{
    const Index n = coords.rows();
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_labels;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> labels(static_cast<std::size_t>(n));
        int ones = 0;
        for (Index i = 0; i < n; ++i) {
            labels[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
            ones += labels[static_cast<std::size_t>(i)];
        }
        if (ones > capacity || static_cast<int>(n) - ones > capacity) continue;
        if (ones == 0 || ones == static_cast<int>(n)) continue;

        meshplan::Matrix means = meshplan::Matrix::Zero(2, coords.cols());
        Eigen::Vector2i counts = Eigen::Vector2i::Zero();
        for (Index i = 0; i < n; ++i) {
            means.row(labels[static_cast<std::size_t>(i)]) += coords.row(i);
            counts(labels[static_cast<std::size_t>(i)]) += 1;
        }
        means.row(0) /= counts(0);
        means.row(1) /= counts(1);
        double cost = 0.0;
        for (Index i = 0; i < n; ++i)
            cost += (coords.row(i) - means.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
        if (cost < best) {
            best = cost;
            best_labels = labels;
        }
    }
    return {best, best_labels};
}

}  // namespace

TEST_CASE("kmeans_init nails trivially separable points")
{
    ClusterConfig cfg;
    cfg.k = 2;
    cfg.seed = 3;

    const meshplan::Matrix two = column({0.0, 10.0});
    meshplan::Matrix centroids = meshplan::kmeans_init(two, cfg);
    std::vector<double> got{centroids(0, 0), centroids(1, 0)};
    std::sort(got.begin(), got.end());
    CHECK(got[0] == doctest::Approx(0.0));
    CHECK(got[1] == doctest::Approx(10.0));

    // Optimal 2-partition of {0,1,2,10,11,12} has means {1, 11}; checked
    // by the exhaustive bipartition oracle.
    const meshplan::Matrix six = column({0.0, 1.0, 2.0, 10.0, 11.0, 12.0});
    const auto [best_cost, best_labels] = best_bipartition(six, 6);
    CHECK(best_cost == doctest::Approx(4.0));
    centroids = meshplan::kmeans_init(six, cfg);
    got = {centroids(0, 0), centroids(1, 0)};
    std::sort(got.begin(), got.end());
    CHECK(got[0] == doctest::Approx(1.0));
    CHECK(got[1] == doctest::Approx(11.0));
}

TEST_CASE("kmeans_init is deterministic for a fixed seed")
{
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> unit(-5.0, 5.0);
    meshplan::Matrix coords(40, 3);
    for (Index i = 0; i < coords.size(); ++i) coords(i) = unit(rng);

    ClusterConfig cfg;
    cfg.k = 4;
    cfg.seed = 1234;
    const meshplan::Matrix a = meshplan::kmeans_init(coords, cfg);
    const meshplan::Matrix b = meshplan::kmeans_init(coords, cfg);
    CHECK((a.array() == b.array()).all());
}

TEST_CASE("kmeans_init rejects more clusters than points")
{
    ClusterConfig cfg;
    cfg.k = 3;
    CHECK_THROWS_AS(meshplan::kmeans_init(column({0.0, 1.0}), cfg), InfeasibleError);
}

TEST_CASE("balanced assignment separates the crowded pair from the outlier")
{
    const meshplan::Matrix coords = column({0.0, 1.0, 2.0, 100.0});
    ClusterConfig cfg;
    cfg.k = 2;
    cfg.capacity = 2;
    cfg.seed = 7;

    const auto [best_cost, best_labels] = best_bipartition(coords, 2);
    const meshplan::Matrix centroids = meshplan::kmeans_init(coords, cfg);
    const ClusterAssignment assignment = meshplan::balanced_assign(coords, centroids, cfg);

    CHECK(assignment.labels(0) == assignment.labels(1));
    CHECK(assignment.labels(2) == assignment.labels(3));
    CHECK(assignment.labels(0) != assignment.labels(2));
    CHECK(assignment.inertia == doctest::Approx(best_cost).epsilon(1e-9));
}

TEST_CASE("well separated triplets are recovered")
{
    meshplan::Matrix coords(6, 2);
    coords << 0.0, 0.0, 0.2, 0.1, 0.1, 0.3, 50.0, 50.0, 50.2, 50.1, 50.1, 49.8;
    ClusterConfig cfg;
    cfg.k = 2;
    cfg.capacity = 3;
    cfg.seed = 21;

    const ClusterAssignment assignment =
        meshplan::cluster({coords, meshplan::Vector::Zero(3), 2}, cfg);
    CHECK(assignment.labels(0) == assignment.labels(1));
    CHECK(assignment.labels(1) == assignment.labels(2));
    CHECK(assignment.labels(3) == assignment.labels(4));
    CHECK(assignment.labels(4) == assignment.labels(5));
    CHECK(assignment.labels(0) != assignment.labels(3));
}

TEST_CASE("inactive capacity reproduces nearest-centroid labels")
{
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    meshplan::Matrix coords(30, 2);
    for (Index i = 0; i < coords.size(); ++i) coords(i) = unit(rng);
    meshplan::Matrix centroids(3, 2);
    for (Index i = 0; i < centroids.size(); ++i) centroids(i) = unit(rng);

    const Eigen::VectorXi constrained =
        meshplan::transport_assign(coords, centroids, 30, 0);
    for (Index i = 0; i < coords.rows(); ++i) {
        Index nearest = 0;
        double best = (coords.row(i) - centroids.row(0)).squaredNorm();
        for (Index j = 1; j < 3; ++j) {
            const double d = (coords.row(i) - centroids.row(j)).squaredNorm();
            if (d < best) {
                best = d;
                nearest = j;
            }
        }
        CHECK(constrained(i) == static_cast<int>(nearest));
    }
}

TEST_CASE("transport assignment matches the exhaustive optimum")
{
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    std::uniform_int_distribution<int> pick_n(2, 8);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = pick_n(rng);
        std::uniform_int_distribution<int> pick_k(1, std::min(3, n));
        const int k = pick_k(rng);
        meshplan::Matrix coords(n, 2);
        for (Index i = 0; i < coords.size(); ++i) coords(i) = unit(rng);
        meshplan::Matrix centroids(k, 2);
        for (Index i = 0; i < centroids.size(); ++i) centroids(i) = unit(rng);

        int capacity, lower;
        if (trial % 2 == 0) {
            capacity = (n + k - 1) / k;
            lower = n / k;
        } else {
            std::uniform_int_distribution<int> pick_cap((n + k - 1) / k, n);
            capacity = pick_cap(rng);
            lower = 0;
        }

        const Eigen::VectorXi labels =
            meshplan::transport_assign(coords, centroids, capacity, lower);
        const Eigen::VectorXi sizes = count_sizes(labels, k);
        CHECK(sizes.maxCoeff() <= capacity);
        CHECK(sizes.minCoeff() >= lower);

        const double solver_cost = labeled_cost(coords, centroids, labels);
        const double best = exhaustive_best_cost(coords, centroids, capacity, lower);
        CHECK(solver_cost == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("transport assignment beats random feasible assignments")
{
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> unit(-3.0, 3.0);
    const int n = 30;
    const int k = 4;
    const int capacity = 8;
    meshplan::Matrix coords(n, 2);
    for (Index i = 0; i < coords.size(); ++i) coords(i) = unit(rng);
    meshplan::Matrix centroids(k, 2);
    for (Index i = 0; i < centroids.size(); ++i) centroids(i) = unit(rng);

    const Eigen::VectorXi labels = meshplan::transport_assign(coords, centroids, capacity, 0);
    const double solver_cost = labeled_cost(coords, centroids, labels);

    std::vector<int> pool;
    for (int j = 0; j < k; ++j) pool.insert(pool.end(), capacity, j);
    for (int trial = 0; trial < 1000; ++trial) {
        std::shuffle(pool.begin(), pool.end(), rng);
        Eigen::VectorXi random_labels(n);
        for (int i = 0; i < n; ++i) random_labels(i) = pool[static_cast<std::size_t>(i)];
        CHECK(solver_cost <= labeled_cost(coords, centroids, random_labels) + 1e-9);
    }
}

TEST_CASE("balanced assignment hits the documented size window")
{
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    meshplan::Matrix coords(20, 2);
    for (Index i = 0; i < coords.size(); ++i) coords(i) = unit(rng);

    ClusterConfig cfg;
    cfg.k = 4;
    cfg.capacity = 5;
    cfg.seed = 2;
    const ClusterAssignment assignment =
        meshplan::cluster({coords, meshplan::Vector::Zero(3), 2}, cfg);
    const Eigen::VectorXi sizes = count_sizes(assignment.labels, 4);
    for (int j = 0; j < 4; ++j) CHECK(sizes(j) == 5);
}

TEST_CASE("assignment inertia never increases across iterations")
{
    std::mt19937 rng(67);
    std::uniform_real_distribution<double> unit(-4.0, 4.0);
    meshplan::Matrix coords(40, 3);
    for (Index i = 0; i < coords.size(); ++i) coords(i) = unit(rng);
    meshplan::Matrix centroids(5, 3);
    for (Index i = 0; i < centroids.size(); ++i) centroids(i) = unit(rng);

    ClusterConfig cfg;
    cfg.k = 5;
    cfg.seed = 13;
    const ClusterAssignment assignment = meshplan::balanced_assign(coords, centroids, cfg);
    REQUIRE(assignment.inertia_history.size() >= 2);
    for (std::size_t t = 1; t < assignment.inertia_history.size(); ++t)
        CHECK(assignment.inertia_history[t] <= assignment.inertia_history[t - 1] + 1e-12);
}

TEST_CASE("duplicated point clouds reach the brute-force optimum")
{
    meshplan::Matrix coords(8, 2);
    coords << 0.0, 0.0, 0.1, 0.0, 0.0, 0.1, 0.1, 0.1,
              9.0, 9.0, 9.1, 9.0, 9.0, 9.1, 9.1, 9.1;
    ClusterConfig cfg;
    cfg.k = 2;
    cfg.capacity = 4;
    cfg.seed = 17;
    const ClusterAssignment assignment =
        meshplan::cluster({coords, meshplan::Vector::Zero(3), 2}, cfg);
    const auto [best_cost, best_labels] = best_bipartition(coords, 4);
    CHECK(assignment.inertia == doctest::Approx(best_cost).epsilon(1e-9));
}

TEST_CASE("identical configuration and seed give identical labels")
{
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    meshplan::Matrix coords(33, 4);
    for (Index i = 0; i < coords.size(); ++i) coords(i) = unit(rng);

    ClusterConfig cfg;
    cfg.k = 3;
    cfg.seed = 999;
    const auto a = meshplan::cluster({coords, meshplan::Vector::Zero(5), 4}, cfg);
    const auto b = meshplan::cluster({coords, meshplan::Vector::Zero(5), 4}, cfg);
    CHECK((a.labels.array() == b.labels.array()).all());
    CHECK(a.inertia == b.inertia);
}

TEST_CASE("greedy mode respects capacity and the exact mode never costs more")
{
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    meshplan::Matrix coords(24, 2);
    for (Index i = 0; i < coords.size(); ++i) coords(i) = unit(rng);
    meshplan::Matrix centroids(4, 2);
    for (Index i = 0; i < centroids.size(); ++i) centroids(i) = unit(rng);

    const Eigen::VectorXi greedy = meshplan::greedy_assign(coords, centroids, 6);
    const Eigen::VectorXi sizes = count_sizes(greedy, 4);
    CHECK(sizes.maxCoeff() <= 6);
    CHECK(sizes.sum() == 24);

    const Eigen::VectorXi exact = meshplan::transport_assign(coords, centroids, 6, 0);
    CHECK(labeled_cost(coords, centroids, exact) <=
          labeled_cost(coords, centroids, greedy) + 1e-9);

    const Eigen::VectorXi greedy_again = meshplan::greedy_assign(coords, centroids, 6);
    CHECK((greedy.array() == greedy_again.array()).all());
}

TEST_CASE("infeasible capacities are reported")
{
    const meshplan::Matrix coords = column({0.0, 1.0, 2.0, 3.0});
    const meshplan::Matrix centroids = column({0.0});
    CHECK_THROWS_AS(meshplan::transport_assign(coords, centroids, 3, 0), InfeasibleError);

    ClusterConfig cfg;
    cfg.k = 1;
    cfg.capacity = 3;
    CHECK_THROWS_AS(meshplan::cluster({coords, meshplan::Vector::Zero(2), 1}, cfg),
                    InfeasibleError);
}
