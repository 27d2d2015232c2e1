#pragma once

#include <stdexcept>
#include <string>

namespace cylcycles {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IdenticallyZero : Error {
    IdenticallyZero() : Error("trigonometric polynomial is identically zero") {}
};

struct OnSwitchingLine : Error {
    double x;
    int line_index;
    OnSwitchingLine(double x_, int line)
        : Error("field is two-valued on switching line x = x_" + std::to_string(line)),
          x(x_), line_index(line) {}
};

struct QuadratureFailure : Error {
    QuadratureFailure() : Error("adaptive quadrature did not reach tolerance within budget") {}
};

struct TangencyEncountered : Error {
    double time;
    int line_index;
    TangencyEncountered(double t, int line)
        : Error("tangent contact with x_" + std::to_string(line) + " at t = " + std::to_string(t)),
          time(t), line_index(line) {}
};

struct SlidingEncountered : Error {
    double time;
    int line_index;
    SlidingEncountered(double t, int line)
        : Error("sliding contact with x_" + std::to_string(line) + " at t = " + std::to_string(t)),
          time(t), line_index(line) {}
};

struct NotPeriodic : Error {
    NotPeriodic() : Error("trajectory is not periodic") {}
};

struct NonTransversal : Error {
    NonTransversal() : Error("trajectory has a non-transversal crossing") {}
};

struct AmbiguousRegion : Error {
    AmbiguousRegion(const std::string& what) : Error("invalid crossing sequence: " + what) {}
};

struct DivisionNearZero : Error {
    DivisionNearZero() : Error("near-zero lateral value in product formula") {}
};

struct SingularJacobian : Error {
    SingularJacobian() : Error("cyclic bidiagonal Jacobian is numerically singular") {}
};

struct NoConvergence : Error {
    NoConvergence(const std::string& what) : Error("no convergence: " + what) {}
};

struct ArgumentMismatch : Error {
    ArgumentMismatch(const std::string& what) : Error(what) {}
};

struct ModelParseError : Error {
    ModelParseError(const std::string& what) : Error("model parse error: " + what) {}
};

}  // namespace cylcycles
