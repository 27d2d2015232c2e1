#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cylcycles/errors.hpp"
#include "cylcycles/trigpoly.hpp"

using namespace cylcycles;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("evaluation matches the harmonic definition") {
    const TrigPoly p(0.5, {1.0, -0.25}, {0.0, 2.0});
    for (double t : {0.0, 0.3, 1.7, 4.0, 6.1}) {
        const double expected =
            0.5 + std::cos(t) - 0.25 * std::cos(2 * t) + 2.0 * std::sin(2 * t);
        CHECK(p.eval(t) == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK(TrigPoly::constant(3.0).eval(1.234) == doctest::Approx(3.0));
    CHECK(TrigPoly::cosine(3, -2.0).eval(0.7) == doctest::Approx(-2.0 * std::cos(2.1)));
    CHECK(TrigPoly::sine(2, 0.5).eval(0.7) == doctest::Approx(0.5 * std::sin(1.4)));
}

TEST_CASE("periodicity and trimming") {
    const TrigPoly p(0.1, {0.4, 0.0, -0.7}, {0.2});
    CHECK(p.eval(1.0) == doctest::Approx(p.eval(1.0 + kTwoPi)).epsilon(1e-13));
    CHECK(TrigPoly(1.0, {0.0, 0.0}, {0.0}).degree() == 0);
    CHECK(TrigPoly(1.0, {0.0, 1e-3}, {}).degree() == 2);
    CHECK(TrigPoly().is_zero());
    CHECK_FALSE(p.is_zero());
    CHECK(p.one_norm() == doctest::Approx(0.1 + 0.4 + 0.7 + 0.2));
}

TEST_CASE("derivative") {
    const TrigPoly p(0.5, {1.0, -0.25}, {0.3, 2.0});
    const TrigPoly dp = p.derivative();
    for (double t : {0.0, 0.9, 2.5, 5.8}) {
        const double expected = -std::sin(t) + 0.5 * std::sin(2 * t) + 0.3 * std::cos(t) +
                                4.0 * std::cos(2 * t);
        CHECK(dp.eval(t) == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK(TrigPoly::constant(2.0).derivative().is_zero());
}

TEST_CASE("antiderivative splits into linear and periodic parts") {
    const TrigPoly p(0.3, {1.0}, {-0.5});
    const Antiderivative A = antiderivative(p);
    CHECK(A.linear_coeff() == doctest::Approx(0.3));
    CHECK(A.value(0.0) == doctest::Approx(0.0));
    // A(t) = 0.3 t + sin t + 0.5 cos t - 0.5
    for (double t : {0.4, 1.0, 3.3, 6.0}) {
        CHECK(A.value(t) ==
              doctest::Approx(0.3 * t + std::sin(t) + 0.5 * std::cos(t) - 0.5).epsilon(1e-13));
    }
    // derivative of the antiderivative recovers p
    const double h = 1e-6;
    for (double t : {0.7, 2.1, 4.9}) {
        CHECK((A.value(t + h) - A.value(t - h)) / (2 * h) ==
              doctest::Approx(p.eval(t)).epsilon(1e-8));
    }
}

TEST_CASE("evaluation of the scaled forcing harmonic") {
    // -M (n+1) sin(M t) with M = 2, n = 2 at t = pi/4
    const TrigPoly b = TrigPoly::sine(2, -6.0);
    CHECK(b.eval(std::numbers::pi / 4) == doctest::Approx(-6.0).epsilon(1e-14));
}

TEST_CASE("antiderivative periodicity over one period") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> ts(0.0, kTwoPi);
    for (int trial = 0; trial < 20; ++trial) {
        const TrigPoly p(coeff(rng), {coeff(rng), coeff(rng)}, {coeff(rng), coeff(rng)});
        const Antiderivative A = antiderivative(p);
        for (int i = 0; i < 5; ++i) {
            const double t = ts(rng);
            CHECK(A.value(t + kTwoPi) - A.value(t) ==
                  doctest::Approx(kTwoPi * A.linear_coeff()).epsilon(1e-12));
        }
    }
}

TEST_CASE("antiderivative derivative matches the polynomial at random times") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> ts(0.0, kTwoPi);
    const TrigPoly p(coeff(rng), {coeff(rng), coeff(rng), coeff(rng)},
                     {coeff(rng), coeff(rng), coeff(rng)});
    const Antiderivative A = antiderivative(p);
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
        const double t = ts(rng);
        const double fd = (A.value(t + h) - A.value(t - h)) / (2 * h);
        CHECK(fd == doctest::Approx(p.eval(t)).epsilon(1e-8));
    }
}

TEST_CASE("zeros of a single harmonic") {
    const auto sine_zs = zeros_in_period(TrigPoly::sine(1));
    REQUIRE(sine_zs.size() == 2);
    CHECK(sine_zs[0].t == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(sine_zs[1].t == doctest::Approx(std::numbers::pi).epsilon(1e-12));

    const auto cos2_zs = zeros_in_period(TrigPoly::cosine(2));
    REQUIRE(cos2_zs.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(cos2_zs[j].t ==
              doctest::Approx((2.0 * j + 1.0) * std::numbers::pi / 4).epsilon(1e-11));
        CHECK(cos2_zs[j].simple);
    }

    const auto zs = zeros_in_period(TrigPoly::cosine(1));
    REQUIRE(zs.size() == 2);
    CHECK(zs[0].t == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK(zs[1].t == doctest::Approx(3 * std::numbers::pi / 2).epsilon(1e-12));
    CHECK(zs[0].simple);
    CHECK(zs[1].simple);

    CHECK(zeros_in_period(TrigPoly::cosine(3)).size() == 6);
    CHECK(zeros_in_period(TrigPoly::constant(1.0)).empty());
}

TEST_CASE("zeros of a mixed polynomial match an independent high-precision solve") {
    // p(t) = 0.3 + cos t - 0.5 sin 2t, roots isolated with 30-digit arithmetic
    const TrigPoly p(0.3, {1.0}, {0.0, -0.5});
    const auto zs = zeros_in_period(p);
    REQUIRE(zs.size() == 2);
    CHECK(zs[0].t == doctest::Approx(2.4750216803358288).epsilon(1e-11));
    CHECK(zs[1].t == doctest::Approx(4.5609474264139256).epsilon(1e-11));
    CHECK(zs[0].simple);
    CHECK(zs[1].simple);
}

TEST_CASE("a double zero is flagged as non-simple") {
    // 1 + cos t touches zero at t = pi without a sign change
    const auto zs = zeros_in_period(TrigPoly(1.0, {1.0}, {}));
    REQUIRE(zs.size() == 1);
    CHECK(zs[0].t == doctest::Approx(std::numbers::pi).epsilon(1e-6));
    CHECK_FALSE(zs[0].simple);
}

TEST_CASE("the zero polynomial is rejected") {
    CHECK_THROWS_AS(zeros_in_period(TrigPoly()), IdenticallyZero);
    CHECK_THROWS_AS(zeros_in_period(TrigPoly(0.0, {0.0}, {0.0})), IdenticallyZero);
}

TEST_CASE("random polynomials: count bound, residuals and sign-change oracle") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> deg(1, 4);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = deg(rng);
        std::vector<double> cc(m), ss(m);
        for (std::size_t k = 0; k < m; ++k) {
            cc[k] = coeff(rng);
            ss[k] = coeff(rng);
        }
        const TrigPoly p(coeff(rng), std::move(cc), std::move(ss));
        const auto zs = zeros_in_period(p);
        CHECK(zs.size() <= 2 * p.degree());
        const double scale = 1.0 + p.one_norm();
        bool all_simple = true;
        for (const auto& z : zs) {
            CHECK(std::abs(p.eval(z.t)) <= 1e-9 * scale);
            CHECK(z.t >= 0.0);
            CHECK(z.t < kTwoPi);
            all_simple = all_simple && z.simple;
        }
        if (!all_simple) continue;
        // dense sign-change count over one period
        const int N = 100000;
        int changes = 0;
        double prev = p.eval(0.0);
        for (int i = 1; i <= N; ++i) {
            const double v = p.eval(kTwoPi * i / N);
            if (prev * v < 0.0) ++changes;
            prev = v;
        }
        CHECK(static_cast<std::size_t>(changes) == zs.size());
        ++compared;
    }
    CHECK(compared >= 150);
}

TEST_CASE("arithmetic operators") {
    const TrigPoly p(1.0, {2.0}, {0.5});
    const TrigPoly q(0.5, {-1.0, 3.0}, {});
    for (double t : {0.2, 1.9, 5.5}) {
        CHECK((p + q).eval(t) == doctest::Approx(p.eval(t) + q.eval(t)).epsilon(1e-13));
        CHECK((p - q).eval(t) == doctest::Approx(p.eval(t) - q.eval(t)).epsilon(1e-13));
        CHECK((p * 2.5).eval(t) == doctest::Approx(2.5 * p.eval(t)).epsilon(1e-13));
        CHECK((2.5 * p).eval(t) == doctest::Approx(2.5 * p.eval(t)).epsilon(1e-13));
    }
    TrigPoly r = p;
    r += 0.75;
    CHECK(r.eval(0.9) == doctest::Approx(p.eval(0.9) + 0.75).epsilon(1e-13));
}
