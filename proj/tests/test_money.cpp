#include <doctest.h>

#include <stdexcept>

#include <numeric>
#include <random>
#include <vector>

#include "fundsim/money.hpp"

using namespace fundsim;

TEST_CASE("round_half_even rounds to nearest with banker's ties") {
    CHECK(round_half_even(2.5) == 2);
    CHECK(round_half_even(3.5) == 4);
    CHECK(round_half_even(-2.5) == -2);
    CHECK(round_half_even(2.4999) == 2);
    CHECK(round_half_even(2.5001) == 3);
    CHECK(round_half_even(0.0) == 0);
    CHECK(round_half_even(675675675.6756756) == 675675676);
    CHECK_THROWS_AS(round_half_even(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(round_half_even(1e19), std::overflow_error);
}

TEST_CASE("integer-weight allocation is exact and deterministic") {
    std::vector<Money> w{1, 1, 1};
    auto parts = allocate_proportional(100, w);
    CHECK(parts == std::vector<Money>{34, 33, 33});  // residue to lowest index on ties

    w = {3, 2, 1};
    parts = allocate_proportional(100, w);
    CHECK(std::accumulate(parts.begin(), parts.end(), Money{0}) == 100);
    CHECK(parts[0] == 50);
    CHECK(parts[1] == 33);
    CHECK(parts[2] == 17);

    // conservation under adversarial weights
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Money> weights(1 + gen() % 9);
        for (auto& x : weights) x = static_cast<Money>(gen() % 1'000'000);
        if (std::accumulate(weights.begin(), weights.end(), Money{0}) == 0) weights[0] = 1;
        Money total = static_cast<Money>(gen() % 4'000'000'000ull);
        auto out = allocate_proportional(total, weights);
        CHECK(std::accumulate(out.begin(), out.end(), Money{0}) == total);
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (weights[i] == 0) CHECK(out[i] == 0);
        }
    }
}

TEST_CASE("double-weight allocation conserves the total") {
    std::vector<double> w{0.25, 0.30, 0.45};
    auto parts = allocate_proportional(400'000, w);
    CHECK(parts == std::vector<Money>{100'000, 120'000, 180'000});

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> weights(1 + gen() % 7);
        double sum = 0.0;
        for (auto& x : weights) {
            x = unit(gen);
            sum += x;
        }
        if (sum == 0.0) weights[0] = 1.0;
        Money total = static_cast<Money>(gen() % 2'000'000'000ull);
        auto out = allocate_proportional(total, std::span<const double>(weights));
        CHECK(std::accumulate(out.begin(), out.end(), Money{0}) == total);
        for (Money m : out) CHECK(m >= 0);
    }
}

TEST_CASE("allocation input validation") {
    std::vector<Money> none;
    CHECK_THROWS_AS(allocate_proportional(10, none), std::invalid_argument);
    std::vector<Money> zeros{0, 0};
    CHECK_THROWS_AS(allocate_proportional(10, zeros), std::invalid_argument);
    std::vector<Money> neg{1, -1};
    CHECK_THROWS_AS(allocate_proportional(10, neg), std::invalid_argument);
    std::vector<Money> ok{1};
    CHECK_THROWS_AS(allocate_proportional(-1, ok), std::invalid_argument);
}
