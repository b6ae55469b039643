#include "meshplan/similarity.hpp"

#include "meshplan/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using meshplan::Index;
using meshplan::KernelParams;
using meshplan::NumericalError;
using meshplan::PathLossMatrix;

namespace {

PathLossMatrix random_path_loss(Index n, std::mt19937& rng, double na_probability = 0.1)
{
    std::uniform_real_distribution<double> loss(1.0, 200.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    meshplan::Matrix values = meshplan::Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            const double v = unit(rng) < na_probability ? meshplan::no_path() : loss(rng);
            values(i, j) = v;
            values(j, i) = v;
        }
    return {values};
}

}  // namespace

TEST_CASE("alpha matches the hand evaluation")
{
    const KernelParams k{0.9, 0.01, 143.79, 43.79};
    const double alpha = meshplan::compute_alpha(k);
    CHECK(alpha == doctest::Approx(std::log(90.0) / 100.0).epsilon(1e-12));
    CHECK(alpha == doctest::Approx(0.044998).epsilon(1e-4));
}

TEST_CASE("alpha depends only on the range width")
{
    const double a = meshplan::compute_alpha({0.9, 0.01, 143.79, 43.79});
    const double b = meshplan::compute_alpha({0.9, 0.01, 101.0, 1.0});
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("degenerate kernel parameters are rejected")
{
    CHECK_THROWS_AS(meshplan::compute_alpha({0.9, 0.01, 100.0, 100.0}), NumericalError);
    CHECK_THROWS_AS(meshplan::compute_alpha({0.9, 0.01, 50.0, 100.0}), NumericalError);
    CHECK_THROWS_AS(meshplan::compute_alpha({0.5, 0.5, 100.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(meshplan::compute_alpha({0.9, 0.01, 100.0, 0.0}), std::invalid_argument);
}

TEST_CASE("kernel values match scalar evaluation and thresholding")
{
    const KernelParams k{0.9, 0.01, 143.79, 43.79};
    const double alpha = meshplan::compute_alpha(k);

    meshplan::Matrix pl = meshplan::Matrix::Zero(3, 3);
    pl(0, 1) = pl(1, 0) = 43.79;
    pl(0, 2) = pl(2, 0) = 150.0;             // above the budget
    pl(1, 2) = pl(2, 1) = meshplan::no_path();

    const auto s = meshplan::similarity_from_path_loss(pl, alpha, k.pl_max_db);
    CHECK(s(0, 1) == doctest::Approx(std::exp(-alpha * 43.79)).epsilon(1e-12));
    CHECK(s(0, 1) == doctest::Approx(0.1393).epsilon(1e-3));
    CHECK(s(0, 2) == 0.0);
    CHECK(s(1, 2) == 0.0);
    CHECK(s(0, 0) == 0.0);

    // An off-diagonal zero-loss link maps to weight 1.
    meshplan::Matrix perfect = meshplan::Matrix::Zero(2, 2);
    const auto one = meshplan::similarity_from_path_loss(perfect, alpha, k.pl_max_db);
    CHECK(one(0, 1) == 1.0);
}

TEST_CASE("kernel pins the similarity ratio across the range")
{
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> lo(0.5, 80.0);
    std::uniform_real_distribution<double> width(0.5, 250.0);
    for (int trial = 0; trial < 200; ++trial) {
        KernelParams k;
        k.pl_min_db = lo(rng);
        k.pl_max_db = k.pl_min_db + width(rng);
        const double alpha = meshplan::compute_alpha(k);
        const double ratio = std::exp(-alpha * k.pl_min_db) / std::exp(-alpha * k.pl_max_db);
        CHECK(std::abs(ratio - 90.0) / 90.0 <= 1e-9);
    }
}

TEST_CASE("similarity is monotone decreasing in path loss")
{
    const KernelParams k{0.9, 0.01, 143.79, 10.0};
    const double alpha = meshplan::compute_alpha(k);
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> loss(0.0, 143.79);
    for (int trial = 0; trial < 100; ++trial) {
        double a = loss(rng);
        double b = loss(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(std::exp(-alpha * a) > std::exp(-alpha * b));
    }
}

TEST_CASE("similarity matrix inherits symmetry, zero diagonal and [0,1] range")
{
    std::mt19937 rng(55);
    for (int trial = 0; trial < 25; ++trial) {
        const PathLossMatrix pl = random_path_loss(12, rng);
        KernelParams k{0.9, 0.01, 143.79, 0.0};
        k.pl_min_db = meshplan::derive_pl_min(pl);
        const auto sim = meshplan::build_similarity(pl, k);

        CHECK(sim.alpha > 0.0);
        for (Index i = 0; i < 12; ++i) {
            CHECK(sim.values(i, i) == 0.0);
            for (Index j = 0; j < 12; ++j) {
                CHECK(sim.values(i, j) == sim.values(j, i));
                CHECK(sim.values(i, j) >= 0.0);
                CHECK(sim.values(i, j) <= 1.0);
                if (i != j && (meshplan::is_no_path(pl.values(i, j)) || pl.values(i, j) > k.pl_max_db))
                    CHECK(sim.values(i, j) == 0.0);
            }
        }
    }
}

TEST_CASE("pl_min derivation picks the smallest positive finite loss")
{
    meshplan::Matrix values = meshplan::Matrix::Zero(3, 3);
    values(0, 1) = values(1, 0) = 55.5;
    values(0, 2) = values(2, 0) = meshplan::no_path();
    values(1, 2) = values(2, 1) = 42.25;
    CHECK(meshplan::derive_pl_min({values}) == 42.25);

    meshplan::Matrix empty = meshplan::Matrix::Zero(2, 2);
    empty(0, 1) = empty(1, 0) = meshplan::no_path();
    CHECK_THROWS_AS(meshplan::derive_pl_min({empty}), NumericalError);
}

TEST_CASE("non-symmetric input is rejected")
{
    meshplan::Matrix pl = meshplan::Matrix::Zero(2, 2);
    pl(0, 1) = 10.0;
    pl(1, 0) = 11.0;
    CHECK_THROWS_AS(meshplan::similarity_from_path_loss(pl, 0.05, 143.79),
                    std::invalid_argument);
}
