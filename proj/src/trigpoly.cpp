#include "cylcycles/trigpoly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "cylcycles/errors.hpp"
#include "cylcycles/tolerances.hpp"

namespace cylcycles {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_period(double t) {
    double w = std::fmod(t, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}
}  // namespace

TrigPoly::TrigPoly(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : a0_(a0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    if (cos_.size() != sin_.size()) {
        std::size_t m = std::max(cos_.size(), sin_.size());
        cos_.resize(m, 0.0);
        sin_.resize(m, 0.0);
    }
    trim();
}

TrigPoly TrigPoly::constant(double c) { return TrigPoly(c, {}, {}); }

TrigPoly TrigPoly::cosine(std::size_t k, double c) {
    std::vector<double> cc(k, 0.0), ss(k, 0.0);
    if (k == 0) return constant(c);
    cc[k - 1] = c;
    return TrigPoly(0.0, std::move(cc), std::move(ss));
}

TrigPoly TrigPoly::sine(std::size_t k, double c) {
    std::vector<double> cc(k, 0.0), ss(k, 0.0);
    if (k == 0) return constant(0.0);
    ss[k - 1] = c;
    return TrigPoly(0.0, std::move(cc), std::move(ss));
}

void TrigPoly::trim() {
    const double cutoff = tols().coeff_zero * (1.0 + one_norm());
    while (!cos_.empty() && std::abs(cos_.back()) < cutoff && std::abs(sin_.back()) < cutoff) {
        cos_.pop_back();
        sin_.pop_back();
    }
}

double TrigPoly::eval(double t) const {
    // Recurrence on (cos kt, sin kt) via the angle-addition step.
    double acc = a0_;
    const double c1 = std::cos(t), s1 = std::sin(t);
    double ck = 1.0, sk = 0.0;
    for (std::size_t k = 0; k < cos_.size(); ++k) {
        const double cn = ck * c1 - sk * s1;
        const double sn = sk * c1 + ck * s1;
        ck = cn;
        sk = sn;
        acc += cos_[k] * ck + sin_[k] * sk;
    }
    return acc;
}

TrigPoly TrigPoly::derivative() const {
    std::vector<double> dc(cos_.size()), ds(cos_.size());
    for (std::size_t k = 0; k < cos_.size(); ++k) {
        const double kk = static_cast<double>(k + 1);
        dc[k] = kk * sin_[k];
        ds[k] = -kk * cos_[k];
    }
    return TrigPoly(0.0, std::move(dc), std::move(ds));
}

bool TrigPoly::is_zero() const {
    return cos_.empty() && a0_ == 0.0;
}

double TrigPoly::one_norm() const {
    double n = std::abs(a0_);
    for (double c : cos_) n += std::abs(c);
    for (double s : sin_) n += std::abs(s);
    return n;
}

TrigPoly TrigPoly::operator+(const TrigPoly& rhs) const {
    std::size_t m = std::max(cos_.size(), rhs.cos_.size());
    std::vector<double> cc(m, 0.0), ss(m, 0.0);
    for (std::size_t k = 0; k < cos_.size(); ++k) { cc[k] += cos_[k]; ss[k] += sin_[k]; }
    for (std::size_t k = 0; k < rhs.cos_.size(); ++k) { cc[k] += rhs.cos_[k]; ss[k] += rhs.sin_[k]; }
    return TrigPoly(a0_ + rhs.a0_, std::move(cc), std::move(ss));
}

TrigPoly TrigPoly::operator-(const TrigPoly& rhs) const {
    return *this + rhs * -1.0;
}

TrigPoly TrigPoly::operator*(double s) const {
    std::vector<double> cc(cos_), ss(sin_);
    for (double& c : cc) c *= s;
    for (double& x : ss) x *= s;
    return TrigPoly(a0_ * s, std::move(cc), std::move(ss));
}

Antiderivative::Antiderivative(double linear_coeff, TrigPoly periodic_part)
    : linear_(linear_coeff), periodic_(std::move(periodic_part)) {}

Antiderivative antiderivative(const TrigPoly& p) {
    const std::size_t m = p.degree();
    std::vector<double> cc(m, 0.0), ss(m, 0.0);
    double a0 = 0.0;  // constant term chosen so the periodic part vanishes at 0
    for (std::size_t k = 0; k < m; ++k) {
        const double kk = static_cast<double>(k + 1);
        ss[k] = p.cos_coeffs()[k] / kk;
        cc[k] = -p.sin_coeffs()[k] / kk;
        a0 -= cc[k];
    }
    return Antiderivative(p.a0(), TrigPoly(a0, std::move(cc), std::move(ss)));
}

namespace {

// Safeguarded Newton refinement of a zero of p near t0.
double refine_zero(const TrigPoly& p, const TrigPoly& dp, double t0) {
    double t = t0;
    for (int it = 0; it < 60; ++it) {
        const double f = p.eval(t);
        if (f == 0.0) break;
        const double df = dp.eval(t);
        if (df == 0.0) break;
        const double step = f / df;
        if (std::abs(step) > 0.1) break;  // eigenvalue was not close enough; keep t
        t -= step;
        if (std::abs(step) < 1e-16) break;
    }
    return t;
}

}  // namespace

std::vector<IsolatedZero> zeros_in_period(const TrigPoly& p) {
    if (p.is_zero()) throw IdenticallyZero();

    const std::size_t m = p.degree();
    const double norm = p.one_norm();
    const double residual_target = tols().zero_residual * (1.0 + norm);

    if (m == 0) return {};  // nonzero constant

    // z = exp(it): z^m p(t) is a degree-2m polynomial q(z).
    using C = std::complex<double>;
    std::vector<C> q(2 * m + 1, C(0.0, 0.0));
    q[m] = C(p.a0(), 0.0);
    for (std::size_t k = 1; k <= m; ++k) {
        const double a = p.cos_coeffs()[k - 1];
        const double s = p.sin_coeffs()[k - 1];
        q[m + k] += C(a / 2.0, -s / 2.0);
        q[m - k] += C(a / 2.0, s / 2.0);
    }

    const std::size_t deg = 2 * m;
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (std::size_t j = 0; j < deg; ++j) {
        if (j + 1 < deg) companion(j + 1, j) = 1.0;
        companion(j, deg - 1) = -q[j] / q[deg];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);

    const TrigPoly dp = p.derivative();
    std::vector<double> candidates;
    for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) {
        const C z = solver.eigenvalues()[j];
        if (std::abs(std::abs(z) - 1.0) > tols().unit_circle) continue;
        double t = wrap_period(std::arg(z));
        t = wrap_period(refine_zero(p, dp, t));
        if (std::abs(p.eval(t)) <= 100.0 * residual_target) candidates.push_back(t);
    }
    std::sort(candidates.begin(), candidates.end());

    // Merge clustered refinements (conjugate pairs at t=0/pi, multiple roots).
    std::vector<double> merged;
    const double merge_radius = 1e-7;
    for (double t : candidates) {
        if (!merged.empty() && t - merged.back() < merge_radius) continue;
        merged.push_back(t);
    }
    if (merged.size() >= 2 && (kTwoPi - merged.back()) + merged.front() < merge_radius) {
        merged.pop_back();
    }

    std::vector<IsolatedZero> zeros;
    const double w = tols().multiple_zero_window;
    for (double t : merged) {
        const bool simple = p.eval(t - w) * p.eval(t + w) < 0.0;
        zeros.push_back({t, simple});
    }
    if (zeros.size() > 2 * m) zeros.resize(2 * m);
    return zeros;
}

}  // namespace cylcycles
