#pragma once

#include <cstddef>
#include <vector>

namespace cylcycles {

// Real trigonometric polynomial  a0 + sum_k a_k cos(kt) + sum_k s_k sin(kt),
// 2*pi-periodic. Coefficient pairs beyond the degree are trimmed on
// construction; the zero polynomial has degree 0.
class TrigPoly {
  public:
    TrigPoly() = default;
    TrigPoly(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

    static TrigPoly constant(double c);
    // Single harmonic c*cos(k t) or c*sin(k t).
    static TrigPoly cosine(std::size_t k, double c = 1.0);
    static TrigPoly sine(std::size_t k, double c = 1.0);

    double a0() const { return a0_; }
    const std::vector<double>& cos_coeffs() const { return cos_; }
    const std::vector<double>& sin_coeffs() const { return sin_; }
    std::size_t degree() const { return cos_.size(); }

    double eval(double t) const;
    TrigPoly derivative() const;

    bool is_zero() const;
    // l1 norm of the coefficient vector.
    double one_norm() const;

    TrigPoly operator+(const TrigPoly& rhs) const;
    TrigPoly operator-(const TrigPoly& rhs) const;
    TrigPoly operator*(double s) const;
    TrigPoly& operator+=(double c) { a0_ += c; return *this; }

  private:
    double a0_ = 0.0;
    std::vector<double> cos_;  // index k-1 holds the cos(kt) coefficient
    std::vector<double> sin_;

    void trim();
};

inline TrigPoly operator*(double s, const TrigPoly& p) { return p * s; }

// Antiderivative of a trig polynomial, split as  linear_coeff * t + periodic(t),
// normalized so value(0) = 0.
class Antiderivative {
  public:
    Antiderivative() = default;
    Antiderivative(double linear_coeff, TrigPoly periodic_part);

    double linear_coeff() const { return linear_; }
    const TrigPoly& periodic_part() const { return periodic_; }

    double value(double t) const { return linear_ * t + periodic_.eval(t); }

  private:
    double linear_ = 0.0;
    TrigPoly periodic_;
};

Antiderivative antiderivative(const TrigPoly& p);

struct IsolatedZero {
    double t;       // in [0, 2*pi)
    bool simple;    // sign change across the zero
};

// All zeros of p in [0, 2*pi), isolated via the companion matrix of the
// associated complex polynomial in z = exp(it) and refined on p itself.
// Throws IdenticallyZero when p vanishes identically; the count never
// exceeds 2 * degree(p).
std::vector<IsolatedZero> zeros_in_period(const TrigPoly& p);

}  // namespace cylcycles
