#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cylcycles/errors.hpp"
#include "cylcycles/field.hpp"
#include "cylcycles/flow.hpp"
#include "cylcycles/quadrature.hpp"

using namespace cylcycles;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// thresholds {0}; b = sin t + 0.2 below, sin t - 0.2 above, a = 0.
// Unique crossing cycle: t1 = acos(pi/10), t2 = t1 + pi.
PiecewiseField two_leg_field() {
    return PiecewiseField({0.0}, {{TrigPoly(), TrigPoly(0.2, {}, {1.0})},
                                  {TrigPoly(), TrigPoly(-0.2, {}, {1.0})}});
}

}  // namespace

TEST_CASE("constant coefficients integrate to the exponential") {
    const double u = advance_in_piece(TrigPoly::constant(1.0), TrigPoly(), 0.0, 1.0, kTwoPi);
    CHECK(u == doctest::Approx(std::exp(kTwoPi)).epsilon(1e-11));
    const double v = advance_in_piece(TrigPoly::constant(-0.5), TrigPoly::constant(1.0), 0.0,
                                      0.0, 2.0);
    CHECK(v == doctest::Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-11));
}

TEST_CASE("oscillatory coefficients match an independent 30-digit solve") {
    // u' = cos(t) u + sin(2t), u(0) = 0.7
    const double u = advance_in_piece(TrigPoly::cosine(1), TrigPoly::sine(2), 0.0, 0.7, 2.0);
    CHECK(u == doctest::Approx(2.884365011989138).epsilon(1e-12));
}

TEST_CASE("pure forcing integrates the coefficient") {
    // a = 0, b = cos t from 0: u(pi/2) = 1
    CHECK(advance_in_piece(TrigPoly(), TrigPoly::cosine(1), 0.0, 0.0,
                           std::numbers::pi / 2) == doctest::Approx(1.0).epsilon(1e-12));
    // a = 0, b = -3 sin t from 4.5: u(t) = 3 cos t + 1.5
    CHECK(advance_in_piece(TrigPoly(), TrigPoly::sine(1, -3.0), 0.0, 4.5,
                           std::numbers::pi) == doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("propagation is a semigroup") {
    const TrigPoly a(0.2, {0.7}, {-0.3});
    const TrigPoly b(0.0, {0.1}, {1.0});
    const double mid = advance_in_piece(a, b, 0.3, 1.1, 2.0);
    const double direct = advance_in_piece(a, b, 0.3, 1.1, 5.0);
    const double chained = advance_in_piece(a, b, 2.0, mid, 5.0);
    CHECK(chained == doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("monodromy matches an independent 30-digit solve") {
    // a = 0.3 + cos t, b = 1 - 0.5 sin t
    const Monodromy mono = monodromy(TrigPoly(0.3, {1.0}, {}), TrigPoly(1.0, {}, {-0.5}));
    CHECK(mono.A == doctest::Approx(6.5860619626947249).epsilon(1e-12));
    CHECK(mono.B == doctest::Approx(19.428814262934746).epsilon(1e-12));
    CHECK(mono.B / (1.0 - mono.A) == doctest::Approx(-3.4780878537842528).epsilon(1e-11));
}

TEST_CASE("zero-mean coefficients give a trivial monodromy") {
    const Monodromy m1 = monodromy(TrigPoly::cosine(1), TrigPoly());
    CHECK(m1.A == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m1.B == doctest::Approx(0.0).epsilon(1e-12));
    const Monodromy m2 = monodromy(TrigPoly::constant(1.0), TrigPoly());
    CHECK(m2.A == doctest::Approx(std::exp(kTwoPi)).epsilon(1e-12));
    const Monodromy m3 = monodromy(TrigPoly(), TrigPoly::sine(1));
    CHECK(m3.A == doctest::Approx(1.0));
    CHECK(m3.B == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m1.A > 0.0);
    CHECK(m2.A > 0.0);
}

TEST_CASE("displacement closed forms on a single region") {
    const PiecewiseField still({}, {{TrigPoly(), TrigPoly()}});
    CHECK(displacement(still, 0.7) == doctest::Approx(0.0));
    const PiecewiseField growth({}, {{TrigPoly::constant(0.25), TrigPoly()}});
    for (double x : {-2.0, 0.5, 3.0}) {
        CHECK(displacement(growth, x) ==
              doctest::Approx(x * (std::exp(kTwoPi * 0.25) - 1.0)).epsilon(1e-10));
    }
}

TEST_CASE("uniform positive forcing crosses the line once") {
    const PiecewiseField f({0.0}, {{TrigPoly(), TrigPoly::constant(1.0)},
                                   {TrigPoly(), TrigPoly::constant(1.0)}});
    const Trajectory traj = flow_with_events(f, 0.0, -0.5, kTwoPi);
    REQUIRE(traj.events.size() == 1);
    CHECK(traj.events[0].time == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(traj.events[0].direction == Direction::up);
    CHECK(traj.events[0].transversal);
    CHECK(traj.x1 == doctest::Approx(-0.5 + kTwoPi).epsilon(1e-10));
}

TEST_CASE("constant drift admits no periodic solution") {
    const PiecewiseField f({}, {{TrigPoly(), TrigPoly::constant(1.0)}});
    const ConstantSignReport rep = constant_sign_cycles(f);
    CHECK(rep.cycles.empty());
    CHECK(rep.continuum_regions.empty());
}

TEST_CASE("the equilibrium of a stable linear piece is recovered") {
    // a = -1, b = 1: x = 1 is the constant periodic solution
    const PiecewiseField f({}, {{TrigPoly::constant(-1.0), TrigPoly::constant(1.0)}});
    const ConstantSignReport rep = constant_sign_cycles(f);
    REQUIRE(rep.cycles.size() == 1);
    CHECK(rep.cycles[0].x_star == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(rep.cycles[0].multiplier == doctest::Approx(std::exp(-kTwoPi)).epsilon(1e-11));
}

TEST_CASE("crossing events of the explicit cosine solution") {
    // a = 0, b = -2 sin t on three regions with thresholds 1, 2: every
    // solution is 2 cos t + const.
    const TrigPoly b = TrigPoly::sine(1, -2.0);
    const PiecewiseField f({1.0, 2.0},
                           {{TrigPoly(), b}, {TrigPoly(), b}, {TrigPoly(), b}});
    const double x0 = 3.5;  // u = 2 cos t + 1.5
    const Trajectory traj = flow_with_events(f, 0.0, x0, kTwoPi);
    CHECK(traj.x1 == doctest::Approx(x0).epsilon(1e-10));
    CHECK_FALSE(traj.tangency_flag);
    REQUIRE(traj.events.size() == 4);
    // 2 cos t + 1.5 crosses x = 2 at acos(0.25), x = 1 at acos(-0.25)
    const double tA = std::acos(0.25), tB = std::acos(-0.25);
    CHECK(traj.events[0].time == doctest::Approx(tA).epsilon(1e-10));
    CHECK(traj.events[0].line_index == 2);
    CHECK(traj.events[0].direction == Direction::down);
    CHECK(traj.events[1].time == doctest::Approx(tB).epsilon(1e-10));
    CHECK(traj.events[1].line_index == 1);
    CHECK(traj.events[1].direction == Direction::down);
    CHECK(traj.events[2].time == doctest::Approx(kTwoPi - tB).epsilon(1e-10));
    CHECK(traj.events[2].line_index == 1);
    CHECK(traj.events[2].direction == Direction::up);
    CHECK(traj.events[3].time == doctest::Approx(kTwoPi - tA).epsilon(1e-10));
    CHECK(traj.events[3].line_index == 2);
    CHECK(traj.events[3].direction == Direction::up);
    for (const auto& e : traj.events) CHECK(e.transversal);
}

TEST_CASE("the two-leg cycle closes under the flow") {
    const PiecewiseField f = two_leg_field();
    const double x0 = -0.93608580933854806;  // value at t = 0 of the closed-form cycle
    const Trajectory traj = flow_with_events(f, 0.0, x0, kTwoPi);
    REQUIRE(traj.events.size() == 2);
    CHECK(traj.events[0].time == doctest::Approx(1.2512253734876369).epsilon(1e-9));
    CHECK(traj.events[0].direction == Direction::up);
    CHECK(traj.events[1].time == doctest::Approx(4.3928180270774301).epsilon(1e-9));
    CHECK(traj.events[1].direction == Direction::down);
    CHECK(traj.x1 == doctest::Approx(x0).epsilon(1e-10));
    CHECK(displacement(f, x0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("departure from a splitting line with an explicit region") {
    const PiecewiseField f = two_leg_field();
    const double t1 = 1.2512253734876369;
    const Trajectory traj = flow_with_events(f, t1, 0.0, t1 + kTwoPi, 2);
    CHECK(std::abs(traj.x1) <= 1e-9);
    REQUIRE(traj.events.size() == 2);
    CHECK(traj.events[0].time == doctest::Approx(4.3928180270774301).epsilon(1e-9));
    CHECK_THROWS_AS(flow_with_events(f, t1, 0.0, t1 + kTwoPi, 5), ArgumentMismatch);
}

TEST_CASE("a tangent contact stops the flow and flags the trajectory") {
    // u = -1 + sin t touches x = 0 exactly when the lateral value cos t vanishes
    const PiecewiseField f({0.0}, {{TrigPoly(), TrigPoly::cosine(1)},
                                   {TrigPoly(), TrigPoly::cosine(1)}});
    const Trajectory traj = flow_with_events(f, 0.0, -1.0, kTwoPi);
    CHECK(traj.tangency_flag);
    REQUIRE(traj.events.size() == 1);
    CHECK(traj.events[0].time == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
    CHECK_FALSE(traj.events[0].transversal);
    CHECK_THROWS_AS(displacement(f, -1.0), TangencyEncountered);
}

TEST_CASE("opposite lateral signs raise a sliding error") {
    const PiecewiseField f({0.0}, {{TrigPoly(), TrigPoly::constant(1.0)},
                                   {TrigPoly(), TrigPoly::constant(-1.0)}});
    CHECK_THROWS_AS(flow_with_events(f, 0.0, -0.5, kTwoPi), SlidingEncountered);
}

TEST_CASE("constant-sign fixed points per region") {
    // single region, a = 0.3 + cos t, b = 1 - 0.5 sin t
    const PiecewiseField single({}, {{TrigPoly(0.3, {1.0}, {}), TrigPoly(1.0, {}, {-0.5})}});
    const ConstantSignReport rep = constant_sign_cycles(single);
    REQUIRE(rep.cycles.size() == 1);
    CHECK(rep.cycles[0].x_star == doctest::Approx(-3.4780878537842528).epsilon(1e-10));
    CHECK(rep.cycles[0].region == 1);
    CHECK(rep.cycles[0].multiplier == doctest::Approx(6.5860619626947249).epsilon(1e-11));
    CHECK(rep.continuum_regions.empty());
}

TEST_CASE("zero-mean forcing with a = 0 gives a continuum in every region") {
    const TrigPoly b = TrigPoly::sine(1, -2.0);
    const PiecewiseField f({1.0, 2.0},
                           {{TrigPoly(), b}, {TrigPoly(), b}, {TrigPoly(), b}});
    const ConstantSignReport rep = constant_sign_cycles(f);
    CHECK(rep.cycles.empty());
    CHECK(rep.continuum_regions == std::vector<int>{1, 2, 3});
}

TEST_CASE("constant-sign fixed points outside their region are discarded") {
    const PiecewiseField f = two_leg_field();
    // each piece has A = 1 and B = +-0.4 pi, so no constant-sign cycles
    const ConstantSignReport rep = constant_sign_cycles(f);
    CHECK(rep.cycles.empty());
    CHECK(rep.continuum_regions.empty());
}

TEST_CASE("adaptive quadrature reproduces smooth integrals") {
    const double v = integrate([](double t) { return std::sin(t); }, 0.0,
                               std::numbers::pi, 1e-12);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
    const double w = integrate([](double t) { return std::exp(std::sin(t)); }, 0.0, kTwoPi,
                               1e-12);
    // I0-Bessel identity value of the periodic integral
    CHECK(w == doctest::Approx(7.954926521012846).epsilon(1e-12));
}
