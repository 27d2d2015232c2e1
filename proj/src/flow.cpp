#include "cylcycles/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "cylcycles/errors.hpp"
#include "cylcycles/quadrature.hpp"
#include "cylcycles/tolerances.hpp"

namespace cylcycles {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Variation-of-constants evaluator for one leg inside a linear piece:
//   u(t) = e^{A(t)} (x0 e^{-A(t0)} + \int_{t0}^{t} b(s) e^{-A(s)} ds).
// Cumulative integral bases are cached along the scan so every evaluation
// only integrates over a short tail.
class LegSolver {
  public:
    LegSolver(const LinearPiece& piece, double t0, double x0)
        : a_(piece.a), b_(piece.b), A_(antiderivative(piece.a)), t0_(t0) {
        c0_ = x0 * std::exp(-A_.value(t0));
        base_t_.push_back(t0);
        base_I_.push_back(0.0);
        qtol_ = tols().quadrature_abs * (1.0 + std::abs(x0));
    }

    // Advances the cached cumulative integral to t (monotone in t).
    double extend(double t) {
        const double tb = base_t_.back();
        const double I = base_I_.back() + integrate([this](double s) { return integrand(s); },
                                                    tb, t, qtol_);
        base_t_.push_back(t);
        base_I_.push_back(I);
        return std::exp(A_.value(t)) * (c0_ + I);
    }

    double value(double t) const {
        auto it = std::upper_bound(base_t_.begin(), base_t_.end(), t);
        const std::size_t j = static_cast<std::size_t>(it - base_t_.begin()) - 1;
        const double I = base_I_[j] + integrate([this](double s) { return integrand(s); },
                                                base_t_[j], t, qtol_);
        return std::exp(A_.value(t)) * (c0_ + I);
    }

    double derivative(double t, double u) const { return a_.eval(t) * u + b_.eval(t); }

  private:
    double integrand(double s) const { return b_.eval(s) * std::exp(-A_.value(s)); }

    TrigPoly a_, b_;
    Antiderivative A_;
    double t0_, c0_, qtol_;
    std::vector<double> base_t_, base_I_;
};

// Hybrid Newton/bisection on g(t) = u(t) - threshold inside a sign-change
// bracket.
double refine_crossing(const LegSolver& leg, double thr, double ta, double tb, double ga) {
    double t = 0.5 * (ta + tb);
    for (int it = 0; it < 120 && tb - ta > tols().event_time; ++it) {
        const double u = leg.value(t);
        const double g = u - thr;
        if (g == 0.0) return t;
        if ((g > 0.0) == (ga > 0.0)) {
            ta = t;
        } else {
            tb = t;
        }
        const double du = leg.derivative(t, u);
        double tn = du != 0.0 ? t - g / du : 0.5 * (ta + tb);
        if (!(tn > ta && tn < tb)) tn = 0.5 * (ta + tb);
        t = tn;
    }
    return 0.5 * (ta + tb);
}

struct Contact {
    double time = std::numeric_limits<double>::infinity();
    int line = 0;        // 1..n
    double threshold = 0.0;
    bool tangent = false;
};

// All occurrences in (after, until] of the period-[0,2pi) zero times.
std::vector<double> unfold_zeros(const std::vector<IsolatedZero>& zeros, double after,
                                 double until) {
    std::vector<double> out;
    const double j0 = std::floor(after / kTwoPi) - 1.0;
    for (double j = j0; j * kTwoPi <= until; j += 1.0) {
        for (const auto& z : zeros) {
            const double t = z.t + j * kTwoPi;
            if (t > after && t <= until) out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

double advance_in_piece(const TrigPoly& a, const TrigPoly& b, double t0, double x0, double t1) {
    LegSolver leg({a, b}, t0, x0);
    return leg.value(t1);
}

Trajectory flow_with_events(const PiecewiseField& field, double t0, double x0, double t1,
                            int initial_region) {
    if (t1 < t0 || t1 > t0 + kTwoPi + 1e-9) {
        throw ArgumentMismatch("flow interval must satisfy t0 <= t1 <= t0 + 2*pi");
    }
    Trajectory traj;
    traj.t0 = t0;
    traj.x0 = x0;

    int region = initial_region;
    if (region == 0) {
        region = field.region_of(x0);
    } else if (region < 1 || region > static_cast<int>(field.num_lines()) + 1) {
        throw ArgumentMismatch("initial_region out of range");
    }
    const int n = static_cast<int>(field.num_lines());
    const std::size_t M = std::max<std::size_t>(1, field.max_degree());
    const double mesh_step = kTwoPi / (32.0 * static_cast<double>(M));

    double t = t0;
    double x = x0;

    while (true) {
        const LinearPiece& piece = field.pieces()[static_cast<std::size_t>(region - 1)];
        LegSolver leg(piece, t, x);

        struct Boundary {
            int line;
            double thr;
            double sign;  // sign of u - thr while inside the region
            std::vector<double> tangency_times;
        };
        std::vector<Boundary> boundaries;
        if (region >= 2) {
            Boundary b{region - 1, field.thresholds()[static_cast<std::size_t>(region - 2)],
                       +1.0, {}};
            try {
                b.tangency_times =
                    unfold_zeros(field.switching_zero_times(b.line, Side::above), t + 1e-12, t1);
            } catch (const IdenticallyZero&) {
                // invariant line; unreachable in finite time from this side
            }
            boundaries.push_back(std::move(b));
        }
        if (region <= n) {
            Boundary b{region, field.thresholds()[static_cast<std::size_t>(region - 1)],
                       -1.0, {}};
            try {
                b.tangency_times =
                    unfold_zeros(field.switching_zero_times(b.line, Side::below), t + 1e-12, t1);
            } catch (const IdenticallyZero&) {
            }
            boundaries.push_back(std::move(b));
        }

        // Mesh: uniform step plus every tangency-candidate time.
        std::vector<double> mesh;
        for (double s = t + mesh_step; s < t1; s += mesh_step) mesh.push_back(s);
        for (const auto& b : boundaries)
            for (double s : b.tangency_times) mesh.push_back(s);
        mesh.push_back(t1);
        std::sort(mesh.begin(), mesh.end());
        mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());

        Contact first;
        double prev_t = t;
        std::vector<double> prev_g(boundaries.size());
        for (std::size_t i = 0; i < boundaries.size(); ++i) {
            // At a departure from the line itself the sign is the interior one.
            const double g0 = x - boundaries[i].thr;
            prev_g[i] = std::abs(g0) <= tols().threshold_membership
                            ? boundaries[i].sign * 1e-30
                            : g0;
        }

        double u_end = x;
        for (double s : mesh) {
            const double u = leg.extend(s);
            u_end = u;
            for (std::size_t i = 0; i < boundaries.size(); ++i) {
                const Boundary& b = boundaries[i];
                const double g = u - b.thr;
                // Tangency candidate: a zero of the lateral polynomial where
                // the trajectory sits on the line.
                const bool is_tangency_time =
                    std::binary_search(b.tangency_times.begin(), b.tangency_times.end(), s);
                if (is_tangency_time && std::abs(g) <= tols().tangency * (1.0 + std::abs(b.thr))) {
                    if (s < first.time) first = {s, b.line, b.thr, true};
                }
                if (prev_g[i] * g < 0.0) {
                    const double tc = refine_crossing(leg, b.thr, prev_t, s, prev_g[i]);
                    if (tc < first.time) first = {tc, b.line, b.thr, false};
                }
                prev_g[i] = g;
            }
            if (std::isfinite(first.time) && s >= first.time) break;
            prev_t = s;
        }

        if (!std::isfinite(first.time)) {
            // No contact: check for a grazing arrival exactly at t1.
            for (const auto& b : boundaries) {
                if (std::abs(u_end - b.thr) <= 1e-10 * (1.0 + std::abs(b.thr))) {
                    first = {t1, b.line, b.thr, false};
                }
            }
            if (!std::isfinite(first.time)) {
                traj.t1 = t1;
                traj.x1 = u_end;
                return traj;
            }
        }

        // Classify the contact.
        auto [below, above] = field.side_values(first.line, first.time);
        const double scale = 1.0 + std::abs(first.threshold);
        if (first.tangent || std::min(std::abs(below.value), std::abs(above.value)) <=
                                 tols().tangency * scale) {
            traj.events.push_back({first.time, first.line,
                                   below.value + above.value >= 0.0 ? Direction::up
                                                                   : Direction::down,
                                   false});
            traj.tangency_flag = true;
            traj.t1 = first.time;
            traj.x1 = first.threshold;
            return traj;
        }
        if (below.value * above.value < 0.0) {
            throw SlidingEncountered(first.time, first.line);
        }

        const Direction dir = below.value > 0.0 ? Direction::up : Direction::down;
        traj.events.push_back({first.time, first.line, dir, true});
        region += (dir == Direction::up) ? 1 : -1;
        t = first.time;
        x = first.threshold;

        if (t1 - t <= tols().event_time) {
            traj.t1 = t1;
            traj.x1 = x;
            return traj;
        }
    }
}

double displacement_at_section(const PiecewiseField& field, double t0, double x0) {
    Trajectory traj = flow_with_events(field, t0, x0, t0 + kTwoPi);
    if (traj.tangency_flag) {
        const CrossingEvent& e = traj.events.back();
        throw TangencyEncountered(e.time, e.line_index);
    }
    return traj.x1 - x0;
}

Monodromy monodromy(const TrigPoly& a, const TrigPoly& b) {
    const Antiderivative A = antiderivative(a);
    const double mult = std::exp(A.value(kTwoPi));
    const double B = advance_in_piece(a, b, 0.0, 0.0, kTwoPi);
    return {mult, B};
}

ConstantSignReport constant_sign_cycles(const PiecewiseField& field) {
    ConstantSignReport report;
    const int n = static_cast<int>(field.num_lines());
    for (int region = 1; region <= n + 1; ++region) {
        const LinearPiece& piece = field.pieces()[static_cast<std::size_t>(region - 1)];
        const Monodromy mono = monodromy(piece.a, piece.b);
        const double scale = 1.0 + std::abs(mono.A) + std::abs(mono.B);
        if (std::abs(mono.A - 1.0) <= 1e-10 * scale) {
            if (std::abs(mono.B) <= 1e-10 * scale) report.continuum_regions.push_back(region);
            continue;  // A = 1, B != 0: no periodic solution in this piece
        }
        const double x_star = mono.B / (1.0 - mono.A);
        // Keep only if the periodic solution stays strictly inside the region.
        try {
            Trajectory traj = flow_with_events(field, 0.0, x_star, kTwoPi);
            if (traj.events.empty() && !traj.tangency_flag &&
                field.region_of(x_star) == region) {
                report.cycles.push_back({x_star, region, mono.A});
            }
        } catch (const Error&) {
            // on a switching line or leaves the region: not a constant-sign cycle
        }
    }
    return report;
}

}  // namespace cylcycles
