#pragma once

#include <cstdlib>
#include <string>

namespace cylcycles {

// Global tolerance bundle. Every equality / refinement threshold used by the
// library lives here so they can be tightened or relaxed in one place.
// The environment variable CYLCYCLES_TOL, when set to a positive number,
// scales the whole bundle by that factor.
struct Tolerances {
    double coeff_zero = 1e-14;        // relative cutoff when trimming trig-poly degree
    double threshold_membership = 1e-13;
    double continuity = 1e-12;
    double zero_residual = 1e-12;     // |p(z)| target for isolated zeros (times 1 + ||p||_1)
    double unit_circle = 1e-8;        // |.|z|-1| acceptance for companion roots
    double multiple_zero_window = 1e-6;
    double quadrature_abs = 1e-12;
    double event_time = 1e-12;
    double tangency = 1e-9;           // |lateral value| below this (scaled) is a tangency
    double displacement_zero = 1e-10;
    double newton_residual = 1e-11;
    double cycle_residual = 1e-9;
    double dedup = 1e-8;
    double simplicity = 1e-8;
    double jacobian_singular = 1e-12;

    Tolerances scaled(double s) const;
};

// Bundle in effect for the process; reads CYLCYCLES_TOL once.
const Tolerances& tols();

}  // namespace cylcycles
