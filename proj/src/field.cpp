#include "cylcycles/field.hpp"

#include <algorithm>
#include <cmath>

#include "cylcycles/errors.hpp"
#include "cylcycles/tolerances.hpp"

namespace cylcycles {

PiecewiseField::PiecewiseField(std::vector<double> thresholds, std::vector<LinearPiece> pieces)
    : thresholds_(std::move(thresholds)), pieces_(std::move(pieces)) {
    if (pieces_.size() != thresholds_.size() + 1) {
        throw ArgumentMismatch("field needs exactly thresholds+1 pieces");
    }
    for (std::size_t i = 1; i < thresholds_.size(); ++i) {
        if (!(thresholds_[i - 1] < thresholds_[i])) {
            throw ArgumentMismatch("thresholds must be strictly increasing");
        }
    }
}

std::size_t PiecewiseField::max_degree() const {
    std::size_t m = 0;
    for (const auto& p : pieces_) m = std::max({m, p.a.degree(), p.b.degree()});
    return m;
}

int PiecewiseField::region_of(double x) const {
    for (std::size_t i = 0; i < thresholds_.size(); ++i) {
        if (std::abs(x - thresholds_[i]) <= tols().threshold_membership) {
            throw OnSwitchingLine(x, static_cast<int>(i + 1));
        }
    }
    auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), x);
    return static_cast<int>(it - thresholds_.begin()) + 1;
}

double PiecewiseField::eval(double t, double x) const {
    const auto& p = pieces_[static_cast<std::size_t>(region_of(x) - 1)];
    return p.a.eval(t) * x + p.b.eval(t);
}

std::pair<SideValue, SideValue> PiecewiseField::side_values(int line_index, double t) const {
    const double xi = thresholds_.at(static_cast<std::size_t>(line_index - 1));
    const auto& lower = pieces_[static_cast<std::size_t>(line_index - 1)];
    const auto& upper = pieces_[static_cast<std::size_t>(line_index)];
    SideValue below{line_index, Side::below, lower.a.eval(t) * xi + lower.b.eval(t)};
    SideValue above{line_index, Side::above, upper.a.eval(t) * xi + upper.b.eval(t)};
    return {below, above};
}

bool PiecewiseField::is_crossing(int line_index, double t) const {
    auto [below, above] = side_values(line_index, t);
    return below.value * above.value > 0.0;
}

bool PiecewiseField::is_continuous() const {
    for (std::size_t i = 0; i < thresholds_.size(); ++i) {
        const TrigPoly lo = lateral_poly(static_cast<int>(i + 1), Side::below);
        const TrigPoly hi = lateral_poly(static_cast<int>(i + 1), Side::above);
        if ((lo - hi).one_norm() > tols().continuity * (1.0 + lo.one_norm() + hi.one_norm())) {
            return false;
        }
    }
    return true;
}

PiecewiseField PiecewiseField::perturb(double lambda) const {
    std::vector<LinearPiece> shifted = pieces_;
    for (auto& p : shifted) p.b += lambda;
    return PiecewiseField(thresholds_, std::move(shifted));
}

std::size_t PiecewiseField::max_crossings() const {
    return 2 * max_degree() * thresholds_.size();
}

TrigPoly PiecewiseField::lateral_poly(int line_index, Side side) const {
    const double xi = thresholds_.at(static_cast<std::size_t>(line_index - 1));
    const std::size_t piece =
        static_cast<std::size_t>(line_index - 1) + (side == Side::above ? 1 : 0);
    const auto& p = pieces_[piece];
    return p.a * xi + p.b;
}

std::vector<IsolatedZero> PiecewiseField::switching_zero_times(int line_index, Side side) const {
    return zeros_in_period(lateral_poly(line_index, side));
}

}  // namespace cylcycles
