#include "cylcycles/tolerances.hpp"

namespace cylcycles {

Tolerances Tolerances::scaled(double s) const {
    Tolerances t = *this;
    t.coeff_zero *= s;
    t.threshold_membership *= s;
    t.continuity *= s;
    t.zero_residual *= s;
    t.unit_circle *= s;
    t.multiple_zero_window *= s;
    t.quadrature_abs *= s;
    t.event_time *= s;
    t.tangency *= s;
    t.displacement_zero *= s;
    t.newton_residual *= s;
    t.cycle_residual *= s;
    t.dedup *= s;
    t.simplicity *= s;
    t.jacobian_singular *= s;
    return t;
}

const Tolerances& tols() {
    static const Tolerances bundle = [] {
        Tolerances base;
        if (const char* env = std::getenv("CYLCYCLES_TOL")) {
            char* end = nullptr;
            double s = std::strtod(env, &end);
            if (end != env && s > 0.0) return base.scaled(s);
        }
        return base;
    }();
    return bundle;
}

}  // namespace cylcycles
