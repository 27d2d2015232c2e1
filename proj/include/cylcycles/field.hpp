#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cylcycles/trigpoly.hpp"

namespace cylcycles {

enum class Side { below, above };

struct LinearPiece {
    TrigPoly a;
    TrigPoly b;
};

struct SideValue {
    int line_index;  // 1..n
    Side side;
    double value;    // a(t) * x_i + b(t) of the adjacent piece
};

// Piecewise-linear 2*pi-periodic scalar field: thresholds x_1 < ... < x_n and
// n+1 linear pieces a_i(t) x + b_i(t), piece i governing [x_{i-1}, x_i].
class PiecewiseField {
  public:
    PiecewiseField(std::vector<double> thresholds, std::vector<LinearPiece> pieces);

    const std::vector<double>& thresholds() const { return thresholds_; }
    const std::vector<LinearPiece>& pieces() const { return pieces_; }
    std::size_t num_lines() const { return thresholds_.size(); }

    // Max degree over all coefficient polynomials, recomputed from the pieces.
    std::size_t max_degree() const;

    // 1-based piece index for x strictly inside a region; throws
    // OnSwitchingLine when x sits on a threshold.
    int region_of(double x) const;

    // Field value a_i(t) x + b_i(t) in the region containing x.
    double eval(double t, double x) const;

    // Lateral field values on the line x = x_i at time t.
    std::pair<SideValue, SideValue> side_values(int line_index, double t) const;

    // Strict crossing condition: both lateral values share a strict sign.
    bool is_crossing(int line_index, double t) const;

    bool is_continuous() const;

    // Shift every b_i by the constant lambda; thresholds unchanged.
    PiecewiseField perturb(double lambda) const;

    // Crossing-count bound 2 * M * n.
    std::size_t max_crossings() const;

    // The lateral polynomial a(t) x_i + b(t) for the given side of line i.
    TrigPoly lateral_poly(int line_index, Side side) const;

    // Zeros in a period of the lateral polynomial; the only times a tangency
    // can occur on line i from that side. Propagates IdenticallyZero.
    std::vector<IsolatedZero> switching_zero_times(int line_index, Side side) const;

  private:
    std::vector<double> thresholds_;
    std::vector<LinearPiece> pieces_;
};

}  // namespace cylcycles
