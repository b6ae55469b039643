#include "meshplan/link_budget.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using meshplan::LinkBudgetParams;
using meshplan::LinkBudgetResult;

TEST_CASE("pl_max reproduces the hardware anchor")
{
    // 30 + 6 + 6 - 11.62 - (-113.41) - 0 = 143.79, checked by hand.
    const LinkBudgetParams p{30.00, 6.00, 6.00, -11.62, -113.41, 0.0};
    const auto result = meshplan::compute_pl_max(p);
    CHECK(std::abs(result.pl_max_db - 143.79) <= 0.005);
}

TEST_CASE("only sensitivity contributes when everything else is zero")
{
    const LinkBudgetParams p{0.0, 0.0, 0.0, 0.0, -100.0, 0.0};
    CHECK(meshplan::compute_pl_max(p).pl_max_db == doctest::Approx(100.0));
}

TEST_CASE("link margin subtracts linearly")
{
    const LinkBudgetParams p{30.00, 6.00, 6.00, -11.62, -113.41, 10.0};
    CHECK(meshplan::compute_pl_max(p).pl_max_db == doctest::Approx(133.79));
}

TEST_CASE("pl_max shifts by exactly the parameter delta")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> value(0.0, 40.0);
    for (int trial = 0; trial < 50; ++trial) {
        LinkBudgetParams p;
        p.tx_power_dbm = 20.0 + value(rng);
        p.tx_gain_dbi = value(rng) / 4.0;
        p.rx_gain_dbi = value(rng) / 4.0;
        p.system_losses_db = -value(rng) / 4.0;
        p.rx_sensitivity_dbm = -90.0 - value(rng);
        p.link_margin_db = value(rng) / 4.0;
        const double base = meshplan::compute_pl_max(p).pl_max_db;
        const double delta = value(rng) / 10.0;

        LinkBudgetParams gained = p;
        gained.tx_gain_dbi += delta;
        CHECK(meshplan::compute_pl_max(gained).pl_max_db ==
              doctest::Approx(base + delta).epsilon(1e-12));

        LinkBudgetParams margined = p;
        margined.link_margin_db += delta;
        CHECK(meshplan::compute_pl_max(margined).pl_max_db ==
              doctest::Approx(base - delta).epsilon(1e-12));
    }
}

TEST_CASE("usability boundary is inclusive")
{
    const LinkBudgetResult budget{143.79};
    CHECK(meshplan::is_usable(143.79, budget));
    CHECK_FALSE(meshplan::is_usable(143.80, budget));
    CHECK_FALSE(meshplan::is_usable(meshplan::no_path(), budget));
    CHECK(meshplan::is_usable(0.0, budget));
}

TEST_CASE("parameter invariants are enforced")
{
    LinkBudgetParams p;
    p.link_margin_db = -1.0;
    CHECK_THROWS_AS(meshplan::compute_pl_max(p), std::invalid_argument);

    p = LinkBudgetParams{};
    p.system_losses_db = 3.0;
    CHECK_THROWS_AS(meshplan::compute_pl_max(p), std::invalid_argument);

    p = LinkBudgetParams{};
    p.rx_sensitivity_dbm = p.tx_power_dbm;
    CHECK_THROWS_AS(meshplan::compute_pl_max(p), std::invalid_argument);
}
