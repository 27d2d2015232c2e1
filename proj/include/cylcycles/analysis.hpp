#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cylcycles/bounds.hpp"
#include "cylcycles/cycles.hpp"
#include "cylcycles/field.hpp"
#include "cylcycles/flow.hpp"

namespace cylcycles {

struct AnalysisOptions {
    std::optional<double> x_lo;
    std::optional<double> x_hi;
    std::size_t grid = 2048;
    double lambda = 0.0;
    std::size_t threads = 1;
};

struct LineZeroSummary {
    int line;
    std::vector<double> below;  // zero times of the lower lateral polynomial
    std::vector<double> above;
    bool below_identically_zero = false;
    bool above_identically_zero = false;
};

struct AnalysisReport {
    std::size_t n = 0;
    std::size_t M = 0;
    bool continuous = false;
    std::vector<LineZeroSummary> switching_zeros;
    CycleSearchResult search;
    ConstantSignReport constant_sign;
    std::optional<BoundReport> bound_context;  // general bound when n, M >= 1
    double x_lo = 0.0, x_hi = 0.0;
    std::size_t grid = 0;
};

// Full pipeline: optional lambda-perturbation, crossing-cycle search and
// constant-sign analysis.
AnalysisReport analyze(const PiecewiseField& field, const AnalysisOptions& options);

nlohmann::json analysis_report_to_json(const AnalysisReport& report);
// cycles table: x0,residual_norm,d_prime,simple,sequence,times
std::string analysis_report_to_csv(const AnalysisReport& report);

// Model builders for the reproduction experiments.
// Two-region field sin(t) + (eps / 2*pi) cos(k t) |x| (the period-rescaled
// family with at least k-2 cycles).
PiecewiseField coll_field(int k, double eps);
// a_i = 0, b_i = -M (n+1) sin(M t), thresholds at 1..n; every solution is
// (n+1) cos(M t) + C.
PiecewiseField max_crossings_field(std::size_t M, std::size_t n);
// a(t)|x| + b0 with constant b0.
PiecewiseField gasull_field(const TrigPoly& a, double b0);

struct ReproduceResult {
    bool pass = false;
    nlohmann::json details;
};

ReproduceResult reproduce_coll(int k, double eps, std::size_t grid = 2048);
ReproduceResult reproduce_max_crossings(std::size_t M, std::size_t n, unsigned seed = 7,
                                        int perturb_trials = 10);
ReproduceResult reproduce_constant_sign(std::size_t M = 3, int fields = 100, unsigned seed = 11);
ReproduceResult reproduce_gasull(std::size_t M = 2, int fields = 20, unsigned seed = 13);

}  // namespace cylcycles
