#include <doctest.h>

#include <cmath>

#include "fundsim/rng.hpp"

using namespace fundsim;

TEST_CASE("streams replay and separate") {
    Rng a(42, 7);
    Rng b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng c(42, 8);
    Rng d(43, 7);
    Rng e(42, 7);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 8; ++i) {
        auto r = e.next_u64();
        differs_c |= c.next_u64() != r;
        differs_d |= d.next_u64() != r;
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("uniform01 stays in [0,1) and fills the range") {
    Rng rng(1, 2);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo < 0.001);
    CHECK(hi > 0.999);
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("bernoulli edge probabilities") {
    Rng rng(5, 5);
    for (int i = 0; i < 1000; ++i) {
        CHECK_FALSE(rng.bernoulli(0.0));
        CHECK(rng.bernoulli(1.0));
    }
}

TEST_CASE("normal moments") {
    Rng rng(9, 3);
    const int n = 200'000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = rng.normal();
        sum += x;
        sq += x * x;
    }
    CHECK(sum / n == doctest::Approx(0.0).epsilon(0.02));
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("pareto inversion hits the analytic mean and degenerates at alpha=inf") {
    Rng rng(1234, 0);
    // alpha 3 keeps the variance finite so a fixed-seed mean check is stable.
    const double alpha = 3.0, xmin = 1.0;
    const int n = 200'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = rng.pareto(alpha, xmin);
        CHECK(x >= xmin);
        sum += x;
    }
    CHECK(sum / n == doctest::Approx(alpha * xmin / (alpha - 1.0)).epsilon(0.02));

    Rng rng2(1234, 1);
    double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) CHECK(rng2.pareto(inf, 2.0) == 2.0);
}
