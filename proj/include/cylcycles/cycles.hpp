#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cylcycles/field.hpp"
#include "cylcycles/flow.hpp"

namespace cylcycles {

// Cyclic word of splitting-line indices visited by a periodic crossing
// solution; equality is up to cyclic rotation.
class CrossingSequence {
  public:
    CrossingSequence() = default;
    explicit CrossingSequence(std::vector<int> lines);

    const std::vector<int>& lines() const { return lines_; }
    std::size_t size() const { return lines_.size(); }

    // Lexicographically least cyclic rotation.
    std::vector<int> canonical_form() const;

    bool operator==(const CrossingSequence& rhs) const {
        return canonical_form() == rhs.canonical_form();
    }

    // 1-based piece index occupied during each leg j (crossing j -> j+1,
    // cyclic), by the backward-lookup interval rules. Throws AmbiguousRegion
    // on inconsistent sequences.
    std::vector<int> leg_regions() const;

  private:
    std::vector<int> lines_;
};

struct LimitCycle {
    double x0 = 0.0;             // value of the cycle at t = 0
    std::vector<double> times;   // crossing times in (0, 2*pi], increasing
    CrossingSequence sequence;
    bool simple = false;
    double d_prime = 0.0;
    double residual_norm = 0.0;
};

// Cyclic bidiagonal matrix with -d_j on the diagonal, c_j on the
// superdiagonal and c_k in the bottom-left corner (k even).
struct CyclicBidiagonal {
    std::vector<double> d;
    std::vector<double> c;

    // prod d_j - prod c_j.
    double determinant() const;
    // Solves J * delta = rhs in O(k) by forward elimination in the first
    // unknown. Throws SingularJacobian.
    std::vector<double> solve(const std::vector<double>& rhs) const;
};

struct AssembledSystem {
    std::vector<double> residuals;
    CyclicBidiagonal jacobian;
};

struct NewtonResult {
    std::vector<double> times;
    double residual_norm = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct ExcludedPoint {
    double x0;
    std::string reason;
};

struct CycleSearchResult {
    std::vector<LimitCycle> cycles;       // certified sign-changing simple cycles
    std::vector<LimitCycle> uncertified;  // |d'| below the simplicity threshold
    std::vector<ExcludedPoint> excluded;  // tangency / sliding initial conditions
    std::vector<double> constant_sign_candidates;  // displacement roots with no crossings
};

// Crossing times and line sequence of a periodic, fully transversal
// trajectory. Throws NotPeriodic / NonTransversal.
std::pair<std::vector<double>, CrossingSequence> extract_sequence(const Trajectory& traj);

// Transition residual Q_j(s1, s2) for leg j of the sequence.
double transition_residual(const PiecewiseField& field, std::size_t leg,
                           const CrossingSequence& seq, double s1, double s2);

// Residual vector (wrap leg uses t_1 + 2*pi) and its cyclic-bidiagonal
// Jacobian at the given crossing times.
AssembledSystem assemble_system(const PiecewiseField& field, const CrossingSequence& seq,
                                const std::vector<double>& times);

// Damped Newton on the crossing-time system; the step is halved until the
// strict time ordering is preserved and the residual decreases.
NewtonResult newton_refine(const PiecewiseField& field, const CrossingSequence& seq,
                           std::vector<double> times0);

// Displacement derivative d'(x0) by the telescoping product over the legs.
double d_prime_product(const PiecewiseField& field, const CrossingSequence& seq,
                       const std::vector<double>& times);

// Search domain [x_1 - R, x_n + R] from a coarse a-priori solution bound.
std::pair<double, double> default_search_interval(const PiecewiseField& field);

// Grid scan of the displacement map, bracketing of sign changes and
// near-zero minima, refinement, dedup and Newton certification. The grid
// evaluations run on `threads` workers; every later stage is a deterministic
// sequential reduction, so the result does not depend on the thread count.
CycleSearchResult find_cycles(const PiecewiseField& field, double x_lo, double x_hi,
                              std::size_t grid, std::size_t threads = 1);

}  // namespace cylcycles
