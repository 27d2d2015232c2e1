#pragma once

#include <vector>

#include "cylcycles/field.hpp"
#include "cylcycles/trigpoly.hpp"

namespace cylcycles {

enum class Direction { up, down };

struct CrossingEvent {
    double time;
    int line_index;        // 1..n
    Direction direction;
    bool transversal;
};

struct Trajectory {
    double t0 = 0.0, x0 = 0.0;
    double t1 = 0.0, x1 = 0.0;
    std::vector<CrossingEvent> events;
    bool tangency_flag = false;
};

// Affine period map u(2*pi) = A u(0) + B of one linear piece.
struct Monodromy {
    double A;
    double B;
};

struct ConstantSignCycle {
    double x_star;
    int region;         // 1-based piece index
    double multiplier;  // monodromy A of that piece
};

struct ConstantSignReport {
    std::vector<ConstantSignCycle> cycles;
    std::vector<int> continuum_regions;  // A = 1, B = 0: every solution periodic
};

// Exact propagation inside one linear piece by variation of constants.
double advance_in_piece(const TrigPoly& a, const TrigPoly& b, double t0, double x0, double t1);

// Propagates (t0, x0) to t1 across regions, locating every splitting-line
// contact. Stops at the first tangent contact (tangency_flag set); throws
// SlidingEncountered on opposite-sign lateral values. initial_region = 0
// resolves the region from x0 (which then must avoid the thresholds); a
// 1-based initial_region lets the flow depart from a splitting line into a
// chosen region.
Trajectory flow_with_events(const PiecewiseField& field, double t0, double x0, double t1,
                            int initial_region = 0);

// d(x0) = u(t0 + 2*pi; t0, x0) - x0 for the Poincare section at time t0.
double displacement_at_section(const PiecewiseField& field, double t0, double x0);

inline double displacement(const PiecewiseField& field, double x0) {
    return displacement_at_section(field, 0.0, x0);
}

Monodromy monodromy(const TrigPoly& a, const TrigPoly& b);

// Per-region fixed points of the affine period map, kept only when the
// resulting periodic solution stays strictly inside its region.
ConstantSignReport constant_sign_cycles(const PiecewiseField& field);

}  // namespace cylcycles
