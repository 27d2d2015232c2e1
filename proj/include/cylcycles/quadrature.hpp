#pragma once

#include <concepts>

namespace cylcycles {

// Adaptive Gauss-Kronrod (G7,K15) integration of a smooth integrand over
// [a, b] to the given absolute tolerance. Throws QuadratureFailure when the
// subdivision budget is exhausted.
double integrate(const std::invocable<double> auto& f, double a, double b, double abs_tol);

namespace detail {
struct GK15Result {
    double value;
    double error;
};
GK15Result gk15(double (*f)(double, void*), void* ctx, double a, double b);
double integrate_impl(double (*f)(double, void*), void* ctx, double a, double b, double abs_tol);
}  // namespace detail

double integrate(const std::invocable<double> auto& f, double a, double b, double abs_tol) {
    using F = decltype(f);
    auto thunk = [](double t, void* ctx) -> double {
        return (*static_cast<const std::remove_reference_t<F>*>(ctx))(t);
    };
    return detail::integrate_impl(+thunk, const_cast<void*>(static_cast<const void*>(&f)), a, b,
                                  abs_tol);
}

}  // namespace cylcycles
