#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "fundsim/economics.hpp"

using namespace fundsim;

namespace {

// Normalized baseline terms used throughout: unit fund, ten years, 2% fee,
// 1% GP commit, 20% carry.
FundParams baseline() {
    FundParams p;
    p.fund_size = 1;
    p.lifespan_years = 10;
    p.mgmt_fee_rate = 0.02;
    p.gp_commit_rate = 0.01;
    p.carry_rate = 0.20;
    return p;
}

}  // namespace

TEST_CASE("parameter validation") {
    FundParams p = baseline();
    CHECK_NOTHROW(p.validate());
    p.fund_size = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = baseline();
    p.mgmt_fee_rate = 1.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = baseline();
    p.carry_rate = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = baseline();
    p.mgmt_fee_rate = 0.11;  // 10 years of 11% fees would exceed the fund
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_THROWS_AS(gp_utility_expanded(baseline(), -1.0), std::invalid_argument);
}

TEST_CASE("management fees scale with size, rate and years") {
    FundParams p = baseline();
    p.fund_size = 100'000'000;
    CHECK(management_fee_utility(p) == doctest::Approx(20'000'000.0).epsilon(1e-12));
}

TEST_CASE("simple carry is zero at multiple 1 and matches hand values") {
    FundParams p = baseline();
    CHECK(carry_utility_simple(p, 1.0) == 0.0);
    // net-of-fee base 0.8 doubles: carry = 0.8 * 1 * 0.2
    CHECK(carry_utility_simple(p, 2.0) == doctest::Approx(0.16).epsilon(1e-12));
    auto u = gp_utility_simple(p, 2.0);
    CHECK(u.total == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(u.commit_pnl == 0.0);
    CHECK(u.total == u.fee_utility + u.carry_utility + u.commit_pnl);
}

TEST_CASE("expanded utility frozen values") {
    FundParams p = baseline();
    auto u = gp_utility_expanded(p, 2.0);
    CHECK(u.total == doctest::Approx(0.3248).epsilon(1e-12));
    CHECK(u.fee_utility == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(u.commit_pnl == doctest::Approx(0.006).epsilon(1e-12));
    CHECK(u.carry_utility == doctest::Approx(0.1188).epsilon(1e-12));

    CHECK(gp_utility_expanded(p, 0.0).total == doctest::Approx(-0.008).epsilon(1e-12));

    FundParams q = baseline();
    q.gp_commit_rate = 0.0;
    CHECK(gp_utility_expanded(q, 1.0).total == doctest::Approx(0.16).epsilon(1e-12));
}

TEST_CASE("carry clamp floors only the carry leg") {
    FundParams p = baseline();
    auto raw = gp_utility_expanded(p, 0.0);
    CHECK(raw.carry_utility < 0.0);
    auto clamped = gp_utility_expanded(p, 0.0, /*clamp_carry_at_zero=*/true);
    CHECK(clamped.carry_utility == 0.0);
    CHECK(clamped.commit_pnl == raw.commit_pnl);  // commitment loss untouched
    CHECK(clamped.total == clamped.fee_utility + clamped.commit_pnl);
}

TEST_CASE("grouped breakdown equals the flat polynomial") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> rate(0.0, 1.0);
    std::uniform_real_distribution<double> mult(0.0, 20.0);
    for (int i = 0; i < 10'000; ++i) {
        FundParams p;
        p.fund_size = 1 + static_cast<Money>(gen() % 1'000'000'000ull);
        p.lifespan_years = 1 + static_cast<int>(gen() % 30);
        p.mgmt_fee_rate = rate(gen) / p.lifespan_years;  // keeps lifetime fees <= 1
        p.gp_commit_rate = rate(gen);
        p.carry_rate = rate(gen);
        double m = mult(gen);
        auto grouped = gp_utility_expanded(p, m);
        double poly = expanded_utility_polynomial(p, m);
        double scale = std::max({1.0, std::abs(poly), std::abs(grouped.total)});
        CHECK(std::abs(grouped.total - poly) <= 1e-12 * scale);
        CHECK(grouped.total == grouped.fee_utility + grouped.carry_utility + grouped.commit_pnl);
    }
}

TEST_CASE("utility is linear in fund size") {
    FundParams p = baseline();
    FundParams big = baseline();
    big.fund_size = 1'000'000;
    for (double m : {0.0, 0.5, 1.0, 3.0, 7.5}) {
        double unit = gp_utility_expanded(p, m).total;
        double scaled = gp_utility_expanded(big, m).total;
        CHECK(scaled == doctest::Approx(unit * 1e6).epsilon(1e-12));
    }
}

TEST_CASE("expanded utility is increasing in the multiple") {
    FundParams p = baseline();
    double prev = gp_utility_expanded(p, 0.0).total;
    for (double m = 0.25; m <= 8.0; m += 0.25) {
        double cur = gp_utility_expanded(p, m).total;
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("model discrepancy collapses to carry-on-fees when the GP commits nothing") {
    FundParams p = baseline();
    p.gp_commit_rate = 0.0;
    for (double m : {0.0, 1.0, 2.0, 5.0}) {
        CHECK(model_discrepancy(p, m) ==
              doctest::Approx(0.2 * 1.0 * 0.02 * 10).epsilon(1e-12));  // c*f*p*l = 0.04
    }
    FundParams q = baseline();
    q.mgmt_fee_rate = 0.0;
    q.gp_commit_rate = 0.0;  // with fees and commit both zero the models coincide
    CHECK(model_discrepancy(q, 3.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fee incentive threshold: closed form and sign flip agree") {
    FundParams p = baseline();
    double mstar = fee_incentive_threshold(p);
    CHECK(mstar == doctest::Approx(4.8076923076923075).epsilon(1e-12));

    // A finite bump in the fee rate flips sign exactly at the threshold.
    auto fee_gain = [&](double m) {
        FundParams hi = p;
        hi.mgmt_fee_rate = p.mgmt_fee_rate + 1e-4;
        return gp_utility_expanded(hi, m).total - gp_utility_expanded(p, m).total;
    };
    CHECK(fee_gain(mstar - 0.01) > 0.0);
    CHECK(fee_gain(mstar + 0.01) < 0.0);
}

TEST_CASE("sweep emits baseline plus variants over the grid in order") {
    FundParams p = baseline();
    ParamOverride raise_fee;
    raise_fee.id = "fee-2x";
    raise_fee.mgmt_fee_rate = 0.04;
    std::vector<ParamOverride> variants{raise_fee};
    std::vector<double> grid{0.0, 1.0, 2.0, 3.0, 4.0};

    auto rows = utility_sweep(p, variants, grid, UtilityModel::expanded);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0].variant_id == "baseline");
    CHECK(rows[5].variant_id == "fee-2x");
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(rows[i].multiple == grid[i]);
        // Below the threshold the higher-fee variant dominates.
        CHECK(rows[i + 5].total > rows[i].total);
    }

    // A no-op variant reproduces the baseline rows exactly.
    ParamOverride noop;
    noop.id = "same";
    std::vector<ParamOverride> clones{noop};
    auto dup = utility_sweep(p, clones, grid, UtilityModel::expanded);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(dup[i].total == dup[i + 5].total);
    }

    std::vector<double> empty;
    CHECK_THROWS_AS(utility_sweep(p, variants, empty, UtilityModel::expanded),
                    std::invalid_argument);
}
