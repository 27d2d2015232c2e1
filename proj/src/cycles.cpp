#include "cylcycles/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <tuple>

#include "cylcycles/errors.hpp"
#include "cylcycles/quadrature.hpp"
#include "cylcycles/tolerances.hpp"

namespace cylcycles {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CrossingSequence::CrossingSequence(std::vector<int> lines) : lines_(std::move(lines)) {
    if (lines_.empty()) throw AmbiguousRegion("empty sequence");
    if (lines_.size() % 2 != 0) throw AmbiguousRegion("odd number of crossings");
    const std::size_t k = lines_.size();
    for (std::size_t j = 0; j < k; ++j) {
        const int step = std::abs(lines_[(j + 1) % k] - lines_[j]);
        if (step > 1) throw AmbiguousRegion("consecutive crossings skip a line");
    }
}

std::vector<int> CrossingSequence::canonical_form() const {
    const std::size_t k = lines_.size();
    std::vector<int> best = lines_;
    std::vector<int> rot = lines_;
    for (std::size_t r = 1; r < k; ++r) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

std::vector<int> CrossingSequence::leg_regions() const {
    const std::size_t k = lines_.size();
    // side[j]: true when the solution is above line lines_[j] during leg j.
    std::vector<int> side(k, -1);

    auto forward_known = [&](std::size_t j) {
        return lines_[(j + 1) % k] != lines_[j];
    };
    std::size_t start = k;
    for (std::size_t j = 0; j < k; ++j) {
        if (forward_known(j)) {
            side[j] = lines_[(j + 1) % k] > lines_[j] ? 1 : 0;
            start = j;
        }
    }
    if (start == k) {
        // Fully constant sequence: alternate starting above.
        for (std::size_t j = 0; j < k; ++j) side[j] = (j % 2 == 0) ? 1 : 0;
    } else {
        for (std::size_t step = 1; step < k; ++step) {
            const std::size_t j = (start + step) % k;
            if (side[j] >= 0) continue;
            const std::size_t prev = (j + k - 1) % k;
            if (lines_[prev] != lines_[j]) {
                side[j] = lines_[prev] < lines_[j] ? 1 : 0;
            } else {
                side[j] = 1 - side[prev];
            }
        }
    }

    // Arrival/departure consistency of the sequence.
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t prev = (j + k - 1) % k;
        if (lines_[prev] != lines_[j]) {
            const int arrival_side = lines_[prev] < lines_[j] ? 1 : 0;
            if (arrival_side != side[j]) {
                throw AmbiguousRegion("departure contradicts arrival direction");
            }
        }
    }

    std::vector<int> regions(k);
    for (std::size_t j = 0; j < k; ++j) regions[j] = lines_[j] + side[j];
    return regions;
}

std::pair<std::vector<double>, CrossingSequence> extract_sequence(const Trajectory& traj) {
    if (std::abs(traj.x1 - traj.x0) > 1e-10 * (1.0 + std::abs(traj.x0))) throw NotPeriodic();
    if (traj.events.empty()) throw AmbiguousRegion("constant-sign solution has no crossings");
    std::vector<double> times;
    std::vector<int> lines;
    for (const auto& e : traj.events) {
        if (!e.transversal) throw NonTransversal();
        times.push_back(e.time);
        lines.push_back(e.line_index);
    }
    return {std::move(times), CrossingSequence(std::move(lines))};
}

double CyclicBidiagonal::determinant() const {
    double pd = 1.0, pc = 1.0;
    for (double v : d) pd *= v;
    for (double v : c) pc *= v;
    return pd - pc;
}

std::vector<double> CyclicBidiagonal::solve(const std::vector<double>& rhs) const {
    const std::size_t k = d.size();
    double pd = 1.0, pc = 1.0, scale = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        pd *= d[j];
        pc *= c[j];
        scale = std::max(scale, std::abs(d[j]) + std::abs(c[j]));
    }
    const double det_scale = std::max(std::abs(pd), std::abs(pc));
    if (std::abs(pd - pc) <= tols().jacobian_singular * std::max(det_scale, 1e-300)) {
        throw SingularJacobian();
    }
    // Unknowns expressed as delta_j = p_j + q_j * delta_0 and closed by the
    // corner equation.
    std::vector<double> p(k), q(k);
    p[0] = 0.0;
    q[0] = 1.0;
    for (std::size_t j = 0; j + 1 < k; ++j) {
        if (std::abs(c[j]) <= 1e-300 * (1.0 + scale)) throw SingularJacobian();
        p[j + 1] = (rhs[j] + d[j] * p[j]) / c[j];
        q[j + 1] = d[j] * q[j] / c[j];
    }
    const double denom = c[k - 1] - d[k - 1] * q[k - 1];
    if (std::abs(denom) <= 1e-300) throw SingularJacobian();
    const double delta0 = (rhs[k - 1] + d[k - 1] * p[k - 1]) / denom;
    std::vector<double> delta(k);
    for (std::size_t j = 0; j < k; ++j) delta[j] = p[j] + q[j] * delta0;
    return delta;
}

namespace {

struct LegContext {
    const TrigPoly* a;
    const TrigPoly* b;
    Antiderivative A;
    double x_from, x_to;
};

std::vector<LegContext> leg_contexts(const PiecewiseField& field, const CrossingSequence& seq) {
    const std::vector<int> regions = seq.leg_regions();
    const std::size_t k = seq.size();
    std::vector<LegContext> legs;
    legs.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const LinearPiece& piece = field.pieces().at(static_cast<std::size_t>(regions[j] - 1));
        legs.push_back({&piece.a, &piece.b, antiderivative(piece.a),
                        field.thresholds().at(static_cast<std::size_t>(seq.lines()[j] - 1)),
                        field.thresholds().at(
                            static_cast<std::size_t>(seq.lines()[(j + 1) % k] - 1))});
    }
    return legs;
}

double leg_residual(const LegContext& leg, double s1, double s2) {
    const double integral = integrate(
        [&](double s) { return leg.b->eval(s) * std::exp(-leg.A.value(s)); }, s1, s2,
        tols().quadrature_abs);
    return leg.x_from * std::exp(-leg.A.value(s1)) + integral -
           leg.x_to * std::exp(-leg.A.value(s2));
}

std::vector<double> residual_vector(const std::vector<LegContext>& legs,
                                    const std::vector<double>& times) {
    const std::size_t k = legs.size();
    std::vector<double> res(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double s1 = times[j];
        const double s2 = (j + 1 < k) ? times[j + 1] : times[0] + kTwoPi;
        res[j] = leg_residual(legs[j], s1, s2);
    }
    return res;
}

}  // namespace

double transition_residual(const PiecewiseField& field, std::size_t leg,
                           const CrossingSequence& seq, double s1, double s2) {
    if (leg >= seq.size()) throw ArgumentMismatch("leg index out of range");
    if (!(s1 <= s2 && s2 <= s1 + kTwoPi + 1e-12)) {
        throw ArgumentMismatch("leg times must satisfy s1 <= s2 <= s1 + 2*pi");
    }
    return leg_residual(leg_contexts(field, seq)[leg], s1, s2);
}

AssembledSystem assemble_system(const PiecewiseField& field, const CrossingSequence& seq,
                                const std::vector<double>& times) {
    const std::size_t k = seq.size();
    if (times.size() != k) throw ArgumentMismatch("times/sequence length mismatch");
    const std::vector<LegContext> legs = leg_contexts(field, seq);

    AssembledSystem sys;
    sys.residuals = residual_vector(legs, times);
    sys.jacobian.d.resize(k);
    sys.jacobian.c.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double s1 = times[j];
        const double s2 = (j + 1 < k) ? times[j + 1] : times[0] + kTwoPi;
        const LegContext& leg = legs[j];
        sys.jacobian.d[j] = (leg.a->eval(s1) * leg.x_from + leg.b->eval(s1)) *
                            std::exp(-leg.A.value(s1));
        sys.jacobian.c[j] = (leg.a->eval(s2) * leg.x_to + leg.b->eval(s2)) *
                            std::exp(-leg.A.value(s2));
    }
    return sys;
}

NewtonResult newton_refine(const PiecewiseField& field, const CrossingSequence& seq,
                           std::vector<double> times0) {
    const std::size_t k = seq.size();
    if (times0.size() != k) throw ArgumentMismatch("times/sequence length mismatch");
    for (std::size_t j = 0; j + 1 < k; ++j) {
        if (!(times0[j] < times0[j + 1])) {
            throw ArgumentMismatch("crossing times must be strictly increasing");
        }
    }
    const std::vector<LegContext> legs = leg_contexts(field, seq);

    auto norm_inf = [](const std::vector<double>& v) {
        double n = 0.0;
        for (double x : v) n = std::max(n, std::abs(x));
        return n;
    };
    auto ordered = [&](const std::vector<double>& t) {
        for (std::size_t j = 0; j + 1 < k; ++j) {
            if (!(t[j] < t[j + 1])) return false;
        }
        return t.back() < t.front() + kTwoPi;  // positive wrap leg
    };

    NewtonResult result;
    result.times = std::move(times0);
    double norm = norm_inf(residual_vector(legs, result.times));
    for (int iter = 0; iter < 50; ++iter) {
        result.iterations = iter;
        result.residual_norm = norm;
        if (norm <= tols().newton_residual) {
            result.converged = true;
            return result;
        }
        AssembledSystem sys = assemble_system(field, seq, result.times);
        std::vector<double> rhs(k);
        for (std::size_t j = 0; j < k; ++j) rhs[j] = -sys.residuals[j];
        const std::vector<double> delta = sys.jacobian.solve(rhs);

        double alpha = 1.0;
        bool stepped = false;
        for (int halve = 0; halve < 20; ++halve, alpha *= 0.5) {
            std::vector<double> cand(k);
            for (std::size_t j = 0; j < k; ++j) cand[j] = result.times[j] + alpha * delta[j];
            if (!ordered(cand)) continue;
            const double cand_norm = norm_inf(residual_vector(legs, cand));
            if (cand_norm < norm || halve == 19) {
                result.times = std::move(cand);
                norm = cand_norm;
                stepped = true;
                break;
            }
        }
        if (!stepped) break;
    }
    result.residual_norm = norm;
    result.converged = norm <= tols().newton_residual;
    return result;
}

double d_prime_product(const PiecewiseField& field, const CrossingSequence& seq,
                       const std::vector<double>& times) {
    const std::size_t k = seq.size();
    if (times.size() != k) throw ArgumentMismatch("times/sequence length mismatch");
    const std::vector<LegContext> legs = leg_contexts(field, seq);
    double prod = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double s1 = times[j];
        const double s2 = (j + 1 < k) ? times[j + 1] : times[0] + kTwoPi;
        const LegContext& leg = legs[j];
        const double num = leg.a->eval(s1) * leg.x_from + leg.b->eval(s1);
        const double den = leg.a->eval(s2) * leg.x_to + leg.b->eval(s2);
        if (std::abs(den) < 1e-10 * (1.0 + std::abs(leg.x_to))) throw DivisionNearZero();
        prod *= (num / den) * std::exp(leg.A.value(s2) - leg.A.value(s1));
    }
    return prod - 1.0;
}

std::pair<double, double> default_search_interval(const PiecewiseField& field) {
    double growth = 0.0;
    for (const auto& piece : field.pieces()) {
        growth = std::max(growth,
                          kTwoPi * piece.b.one_norm() * std::exp(kTwoPi * piece.a.one_norm()));
    }
    const auto& thr = field.thresholds();
    double radius = growth;
    if (!thr.empty()) radius += std::abs(thr.front()) + std::abs(thr.back());
    const double lo = (thr.empty() ? 0.0 : thr.front()) - radius;
    const double hi = (thr.empty() ? 0.0 : thr.back()) + radius;
    return {lo, hi};
}

namespace {

// Crossing times of a one-period trajectory mapped into (0, 2*pi], with the
// line sequence rotated to match the sorted order.
std::pair<std::vector<double>, CrossingSequence> normalize_times(const Trajectory& traj) {
    auto [times, seq] = extract_sequence(traj);
    const std::size_t k = times.size();
    std::vector<std::pair<double, int>> paired(k);
    for (std::size_t j = 0; j < k; ++j) {
        double t = std::fmod(times[j], kTwoPi);
        if (t <= 0.0) t += kTwoPi;
        paired[j] = {t, seq.lines()[j]};
    }
    std::sort(paired.begin(), paired.end());
    std::vector<double> out_t(k);
    std::vector<int> out_l(k);
    for (std::size_t j = 0; j < k; ++j) {
        out_t[j] = paired[j].first;
        out_l[j] = paired[j].second;
    }
    return {std::move(out_t), CrossingSequence(std::move(out_l))};
}

LimitCycle certify(const PiecewiseField& field, const std::vector<double>& times,
                   const CrossingSequence& seq) {
    NewtonResult refined = newton_refine(field, seq, times);
    LimitCycle cycle;
    cycle.times = refined.times;
    cycle.sequence = seq;
    cycle.residual_norm = refined.residual_norm;
    cycle.d_prime = d_prime_product(field, seq, refined.times);
    cycle.simple = std::abs(cycle.d_prime) > tols().simplicity;
    // Value at t = 0 from the wrap leg (t_k, t_1 + 2*pi) containing 2*pi.
    const std::vector<int> regions = seq.leg_regions();
    const LinearPiece& piece = field.pieces().at(static_cast<std::size_t>(regions.back() - 1));
    const double t_k = refined.times.back();
    const double x_k =
        field.thresholds().at(static_cast<std::size_t>(seq.lines().back() - 1));
    cycle.x0 = advance_in_piece(piece.a, piece.b, t_k, x_k, kTwoPi);
    return cycle;
}

// Sign-change refinement of the displacement map; points where the map is
// undefined (tangency/sliding) are stepped around.
std::optional<double> refine_displacement_root(const PiecewiseField& field, double section,
                                               double xa, double xb, double da, double db) {
    double best_x = std::abs(da) < std::abs(db) ? xa : xb;
    double best_d = std::min(std::abs(da), std::abs(db));
    for (int iter = 0; iter < 200; ++iter) {
        if (best_d <= tols().displacement_zero) return best_x;
        const double width = xb - xa;
        if (width <= 1e-15 * (1.0 + std::abs(xa))) break;
        // secant proposal, safeguarded to the middle half of the bracket
        double xm = xa - da * width / (db - da);
        if (!(xm > xa + 0.1 * width && xm < xb - 0.1 * width)) xm = 0.5 * (xa + xb);
        std::optional<double> dm;
        for (int nudge = 0; nudge < 6 && !dm; ++nudge) {
            const double xt = xm + (nudge % 2 == 0 ? 1.0 : -1.0) * nudge * 0.05 * width;
            if (!(xt > xa && xt < xb)) continue;
            try {
                dm = displacement_at_section(field, section, xt);
                xm = xt;
            } catch (const Error&) {
            }
        }
        if (!dm) return std::nullopt;
        if (std::abs(*dm) < best_d) {
            best_d = std::abs(*dm);
            best_x = xm;
        }
        if ((*dm > 0.0) == (da > 0.0)) {
            xa = xm;
            da = *dm;
        } else {
            xb = xm;
            db = *dm;
        }
    }
    return best_d <= tols().displacement_zero ? std::optional<double>(best_x) : std::nullopt;
}

double threshold_distance(const PiecewiseField& field, double x) {
    double dist = std::numeric_limits<double>::infinity();
    for (double thr : field.thresholds()) dist = std::min(dist, std::abs(x - thr));
    return dist;
}

}  // namespace

CycleSearchResult find_cycles(const PiecewiseField& field, double x_lo, double x_hi,
                              std::size_t grid, std::size_t threads) {
    if (!(x_lo < x_hi) || grid < 2) throw ArgumentMismatch("invalid search interval or grid");

    CycleSearchResult result;
    const double h = (x_hi - x_lo) / static_cast<double>(grid - 1);
    std::vector<std::optional<double>> disp(grid);
    std::vector<std::optional<std::string>> scan_error(grid);
    std::vector<double> xs(grid);
    for (std::size_t i = 0; i < grid; ++i) xs[i] = x_lo + h * static_cast<double>(i);

    auto scan = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < grid; i += stride) {
            try {
                disp[i] = displacement(field, xs[i]);
            } catch (const Error& e) {
                scan_error[i] = e.what();
            }
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, grid));
    if (workers == 1) {
        scan(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(scan, w, workers);
        for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < grid; ++i) {
        if (scan_error[i]) result.excluded.push_back({xs[i], *scan_error[i]});
    }

    std::vector<std::pair<double, double>> roots;  // (x0, bracket half width)
    for (std::size_t i = 0; i + 1 < grid; ++i) {
        if (!disp[i] || !disp[i + 1]) continue;
        if (*disp[i] == 0.0) {
            roots.push_back({xs[i], h});
            continue;
        }
        if (*disp[i] * *disp[i + 1] < 0.0) {
            auto r = refine_displacement_root(field, 0.0, xs[i], xs[i + 1], *disp[i],
                                              *disp[i + 1]);
            if (r) roots.push_back({*r, h});
        }
    }
    // Near-zero local minima of |d| (tangent-looking zeros).
    for (std::size_t i = 1; i + 1 < grid; ++i) {
        if (!disp[i - 1] || !disp[i] || !disp[i + 1]) continue;
        const double di = std::abs(*disp[i]);
        if (di >= std::abs(*disp[i - 1]) || di >= std::abs(*disp[i + 1])) continue;
        if (*disp[i - 1] * *disp[i + 1] < 0.0) continue;  // handled as sign change
        if (di > 1e-6 * (1.0 + std::abs(xs[i]))) continue;
        if (di <= tols().displacement_zero) {
            roots.push_back({xs[i], h});
            continue;
        }
        // golden-section shrink on |d|
        double a = xs[i - 1], b = xs[i + 1];
        double xbest = xs[i], dbest = di;
        for (int it = 0; it < 60 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
            const double x1 = a + 0.382 * (b - a);
            const double x2 = a + 0.618 * (b - a);
            double d1, d2;
            try {
                d1 = std::abs(displacement(field, x1));
                d2 = std::abs(displacement(field, x2));
            } catch (const Error&) {
                break;
            }
            if (d1 < d2) b = x2; else a = x1;
            if (d1 < dbest) { dbest = d1; xbest = x1; }
            if (d2 < dbest) { dbest = d2; xbest = x2; }
        }
        if (dbest <= tols().displacement_zero) roots.push_back({xbest, h});
    }

    std::sort(roots.begin(), roots.end());
    std::vector<std::pair<double, double>> unique_roots;
    for (const auto& r : roots) {
        if (!unique_roots.empty() && r.first - unique_roots.back().first < tols().dedup) continue;
        unique_roots.push_back(r);
    }

    for (const auto& [x0, half_width] : unique_roots) {
        try {
            std::vector<double> times;
            CrossingSequence seq;
            if (threshold_distance(field, x0) > 1e-6) {
                Trajectory traj = flow_with_events(field, 0.0, x0, kTwoPi);
                if (traj.events.empty()) {
                    result.constant_sign_candidates.push_back(x0);
                    continue;
                }
                std::tie(times, seq) = normalize_times(traj);
            } else {
                // The cycle meets a threshold at the section time: shift the
                // section until the candidate moves off the lines.
                bool found = false;
                for (int s = 1; s <= 7 && !found; ++s) {
                    const double shift = s * std::numbers::pi / 4.0;
                    try {
                        const double xa = x0 - 16.0 * tols().dedup;
                        const double xb = x0 + 16.0 * tols().dedup;
                        const double ya = flow_with_events(field, 0.0, xa, shift).x1;
                        const double yb = flow_with_events(field, 0.0, xb, shift).x1;
                        const double da = displacement_at_section(field, shift, ya);
                        const double db = displacement_at_section(field, shift, yb);
                        if (da * db > 0.0) continue;
                        double lo = ya, hi = yb, dlo = da, dhi = db;
                        if (lo > hi) {
                            std::swap(lo, hi);
                            std::swap(dlo, dhi);
                        }
                        auto y = refine_displacement_root(field, shift, lo, hi, dlo, dhi);
                        if (!y) continue;
                        Trajectory traj =
                            flow_with_events(field, shift, *y, shift + kTwoPi);
                        std::tie(times, seq) = normalize_times(traj);
                        found = true;
                    } catch (const Error&) {
                    }
                }
                if (!found) {
                    result.excluded.push_back({x0, "cycle meets a threshold at every section tried"});
                    continue;
                }
            }
            LimitCycle cycle = certify(field, times, seq);
            if (cycle.simple) {
                result.cycles.push_back(std::move(cycle));
            } else {
                result.uncertified.push_back(std::move(cycle));
            }
        } catch (const Error& e) {
            result.excluded.push_back({x0, e.what()});
        }
    }
    return result;
}

}  // namespace cylcycles
