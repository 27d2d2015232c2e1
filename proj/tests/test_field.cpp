#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cylcycles/errors.hpp"
#include "cylcycles/field.hpp"

using namespace cylcycles;

namespace {

// thresholds {-1, 1}; pieces x + sin t, 0.5 x, -x + cos t bottom-up
PiecewiseField three_region_field() {
    return PiecewiseField({-1.0, 1.0}, {{TrigPoly::constant(1.0), TrigPoly::sine(1)},
                                        {TrigPoly::constant(0.5), TrigPoly()},
                                        {TrigPoly::constant(-1.0), TrigPoly::cosine(1)}});
}

}  // namespace

TEST_CASE("construction validates shape and ordering") {
    CHECK_THROWS_AS(PiecewiseField({0.0}, {{TrigPoly(), TrigPoly()}}), ArgumentMismatch);
    CHECK_THROWS_AS(PiecewiseField({1.0, 1.0}, {{TrigPoly(), TrigPoly()},
                                                {TrigPoly(), TrigPoly()},
                                                {TrigPoly(), TrigPoly()}}),
                    ArgumentMismatch);
    CHECK_THROWS_AS(PiecewiseField({2.0, -1.0}, {{TrigPoly(), TrigPoly()},
                                                 {TrigPoly(), TrigPoly()},
                                                 {TrigPoly(), TrigPoly()}}),
                    ArgumentMismatch);
    CHECK_NOTHROW(PiecewiseField({}, {{TrigPoly(), TrigPoly()}}));
}

TEST_CASE("region lookup and evaluation") {
    const PiecewiseField f = three_region_field();
    CHECK(f.num_lines() == 2);
    CHECK(f.region_of(-5.0) == 1);
    CHECK(f.region_of(0.0) == 2);
    CHECK(f.region_of(3.0) == 3);
    CHECK_THROWS_AS(f.region_of(1.0), OnSwitchingLine);
    try {
        f.region_of(-1.0);
        FAIL("expected OnSwitchingLine");
    } catch (const OnSwitchingLine& e) {
        CHECK(e.line_index == 1);
        CHECK(e.x == doctest::Approx(-1.0));
    }
    CHECK(f.eval(0.3, -2.0) == doctest::Approx(-2.0 + std::sin(0.3)));
    CHECK(f.eval(0.3, 0.4) == doctest::Approx(0.2));
    CHECK(f.eval(0.3, 2.0) == doctest::Approx(-2.0 + std::cos(0.3)));
}

TEST_CASE("side values and the strict crossing condition") {
    const PiecewiseField f = three_region_field();
    // line 2 (x = 1): below value 0.5, above value -1 + cos t
    auto [below, above] = f.side_values(2, 0.0);
    CHECK(below.value == doctest::Approx(0.5));
    CHECK(above.value == doctest::Approx(0.0));
    CHECK(below.side == Side::below);
    CHECK(above.side == Side::above);
    CHECK_FALSE(f.is_crossing(2, 0.0));      // tangent from above
    CHECK_FALSE(f.is_crossing(2, std::numbers::pi));  // opposite lateral signs
    // line 1 (x = -1): below -1 + sin t, above -0.5; both negative at t = 0
    CHECK(f.is_crossing(1, 0.0));
}

TEST_CASE("continuity detection") {
    CHECK_FALSE(three_region_field().is_continuous());
    // matching lateral polynomials on x = 0: b below equals b above
    const PiecewiseField cont({0.0}, {{TrigPoly::cosine(1, -1.0), TrigPoly::sine(1)},
                                      {TrigPoly::cosine(1), TrigPoly::sine(1)}});
    CHECK(cont.is_continuous());
    const PiecewiseField disc({0.0}, {{TrigPoly(), TrigPoly::constant(1.0)},
                                      {TrigPoly(), TrigPoly::constant(-1.0)}});
    CHECK_FALSE(disc.is_continuous());
}

TEST_CASE("perturbation shifts every piece by the same constant") {
    const PiecewiseField f = three_region_field();
    const PiecewiseField g = f.perturb(0.25);
    CHECK(g.thresholds() == f.thresholds());
    for (double x : {-3.0, 0.2, 4.0}) {
        for (double t : {0.1, 2.0, 5.5}) {
            CHECK(g.eval(t, x) - f.eval(t, x) == doctest::Approx(0.25).epsilon(1e-13));
        }
    }
}

TEST_CASE("crossing-count bound is 2 M n") {
    const PiecewiseField f = three_region_field();
    CHECK(f.max_degree() == 1);
    CHECK(f.max_crossings() == 4);
    const PiecewiseField g({0.0}, {{TrigPoly::cosine(3), TrigPoly()},
                                   {TrigPoly(), TrigPoly::sine(2)}});
    CHECK(g.max_degree() == 3);
    CHECK(g.max_crossings() == 6);
}

TEST_CASE("lateral polynomials and their zero times") {
    const PiecewiseField f = three_region_field();
    // line 2 from above: -1 + cos t, double zero at t = 0
    const TrigPoly up = f.lateral_poly(2, Side::above);
    CHECK(up.eval(1.3) == doctest::Approx(-1.0 + std::cos(1.3)).epsilon(1e-13));
    const auto zs = f.switching_zero_times(2, Side::above);
    REQUIRE(zs.size() == 1);
    CHECK_FALSE(zs[0].simple);
    // line 2 from below: constant 0.5, no zeros
    CHECK(f.switching_zero_times(2, Side::below).empty());
    // an invariant line propagates IdenticallyZero
    const PiecewiseField inv({0.0}, {{TrigPoly::constant(1.0), TrigPoly()},
                                     {TrigPoly::constant(1.0), TrigPoly()}});
    CHECK_THROWS_AS(inv.switching_zero_times(1, Side::below), IdenticallyZero);
}
