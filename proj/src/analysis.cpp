#include "cylcycles/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cylcycles/errors.hpp"
#include "cylcycles/model_io.hpp"
#include "cylcycles/tolerances.hpp"

namespace cylcycles {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TrigPoly random_trigpoly(std::mt19937& rng, std::size_t degree, double amplitude) {
    std::uniform_real_distribution<double> coeff(-amplitude, amplitude);
    std::vector<double> cc(degree), ss(degree);
    const double a0 = coeff(rng);
    for (std::size_t k = 0; k < degree; ++k) {
        cc[k] = coeff(rng);
        ss[k] = coeff(rng);
    }
    return TrigPoly(a0, std::move(cc), std::move(ss));
}

// |u(t1 + 2*pi) - x_{i_1}| when the cycle is re-flowed from its first
// crossing point, entering the region of the first leg.
double reflow_closure(const PiecewiseField& field, const LimitCycle& cycle) {
    const std::vector<int> regions = cycle.sequence.leg_regions();
    const double t1 = cycle.times.front();
    const double x1 =
        field.thresholds()[static_cast<std::size_t>(cycle.sequence.lines().front() - 1)];
    Trajectory traj = flow_with_events(field, t1, x1, t1 + kTwoPi, regions.front());
    return std::abs(traj.x1 - x1);
}

std::string join(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << '|';
        os << v[i];
    }
    return os.str();
}

std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << '|';
        os << v[i];
    }
    return os.str();
}

}  // namespace

AnalysisReport analyze(const PiecewiseField& field0, const AnalysisOptions& options) {
    const PiecewiseField field =
        options.lambda != 0.0 ? field0.perturb(options.lambda) : field0;

    AnalysisReport report;
    report.n = field.num_lines();
    report.M = field.max_degree();
    report.continuous = field.is_continuous();

    for (int line = 1; line <= static_cast<int>(report.n); ++line) {
        LineZeroSummary summary;
        summary.line = line;
        try {
            for (const auto& z : field.switching_zero_times(line, Side::below)) {
                summary.below.push_back(z.t);
            }
        } catch (const IdenticallyZero&) {
            summary.below_identically_zero = true;
        }
        try {
            for (const auto& z : field.switching_zero_times(line, Side::above)) {
                summary.above.push_back(z.t);
            }
        } catch (const IdenticallyZero&) {
            summary.above_identically_zero = true;
        }
        report.switching_zeros.push_back(std::move(summary));
    }

    auto [lo, hi] = default_search_interval(field);
    report.x_lo = options.x_lo.value_or(lo);
    report.x_hi = options.x_hi.value_or(hi);
    report.grid = options.grid;
    report.search =
        find_cycles(field, report.x_lo, report.x_hi, report.grid, options.threads);
    report.constant_sign = constant_sign_cycles(field);

    if (report.n >= 1 && report.M >= 1) {
        report.bound_context = bound_general(report.n, report.M);
    }

    // Sanity assertions: crossing counts and cycle counts against the bounds.
    for (const auto& c : report.search.cycles) {
        if (c.sequence.size() > field.max_crossings()) {
            throw Error("certified cycle exceeds the crossing bound 2Mn");
        }
    }
    if (report.bound_context &&
        mpz_class(static_cast<unsigned long>(report.search.cycles.size())) >
            report.bound_context->value) {
        throw Error("cycle count exceeds the upper bound");
    }
    return report;
}

nlohmann::json analysis_report_to_json(const AnalysisReport& report) {
    nlohmann::json zeros = nlohmann::json::array();
    for (const auto& s : report.switching_zeros) {
        zeros.push_back({{"line", s.line},
                         {"below", s.below},
                         {"above", s.above},
                         {"below_identically_zero", s.below_identically_zero},
                         {"above_identically_zero", s.above_identically_zero}});
    }

    nlohmann::json cycles = nlohmann::json::array();
    for (const auto& c : report.search.cycles) cycles.push_back(cycle_to_json(c));
    nlohmann::json uncertified = nlohmann::json::array();
    for (const auto& c : report.search.uncertified) uncertified.push_back(cycle_to_json(c));
    nlohmann::json excluded = nlohmann::json::array();
    for (const auto& e : report.search.excluded) {
        excluded.push_back({{"x0", e.x0}, {"reason", e.reason}});
    }

    nlohmann::json constant_sign = nlohmann::json::array();
    for (const auto& c : report.constant_sign.cycles) {
        constant_sign.push_back(
            {{"x_star", c.x_star}, {"region", c.region}, {"multiplier", c.multiplier}});
    }

    nlohmann::json j{
        {"field", {{"n", report.n}, {"M", report.M}, {"continuous", report.continuous}}},
        {"switching_zeros", zeros},
        {"search",
         {{"x_lo", report.x_lo},
          {"x_hi", report.x_hi},
          {"grid", report.grid},
          {"cycles", cycles},
          {"uncertified", uncertified},
          {"excluded", excluded},
          {"constant_sign_candidates", report.search.constant_sign_candidates}}},
        {"constant_sign",
         {{"cycles", constant_sign},
          {"continuum_regions", report.constant_sign.continuum_regions}}},
        {"bound", nullptr}};
    if (report.bound_context) {
        j["bound"] = bound_report_to_json(*report.bound_context);
    }
    return j;
}

std::string analysis_report_to_csv(const AnalysisReport& report) {
    std::string out = csv_row({"x0", "residual_norm", "d_prime", "simple", "sequence", "times"});
    auto row = [&out](const LimitCycle& c) {
        std::ostringstream x0, rn, dp;
        x0.precision(17);
        rn.precision(17);
        dp.precision(17);
        x0 << c.x0;
        rn << c.residual_norm;
        dp << c.d_prime;
        out += csv_row({x0.str(), rn.str(), dp.str(), c.simple ? "true" : "false",
                        join(c.sequence.canonical_form()), join(c.times)});
    };
    for (const auto& c : report.search.cycles) row(c);
    for (const auto& c : report.search.uncertified) row(c);
    return out;
}

PiecewiseField coll_field(int k, double eps) {
    const double amp = eps / kTwoPi;
    const std::size_t kk = static_cast<std::size_t>(k);
    const TrigPoly b = TrigPoly::sine(1);
    return PiecewiseField({0.0}, {{TrigPoly::cosine(kk, -amp), b},
                                  {TrigPoly::cosine(kk, amp), b}});
}

PiecewiseField max_crossings_field(std::size_t M, std::size_t n) {
    std::vector<double> thresholds(n);
    for (std::size_t i = 0; i < n; ++i) thresholds[i] = static_cast<double>(i + 1);
    const TrigPoly b = TrigPoly::sine(M, -static_cast<double>(M) * static_cast<double>(n + 1));
    std::vector<LinearPiece> pieces(n + 1, LinearPiece{TrigPoly{}, b});
    return PiecewiseField(std::move(thresholds), std::move(pieces));
}

PiecewiseField gasull_field(const TrigPoly& a, double b0) {
    const TrigPoly b = TrigPoly::constant(b0);
    return PiecewiseField({0.0}, {{a * -1.0, b}, {a, b}});
}

ReproduceResult reproduce_coll(int k, double eps, std::size_t grid) {
    ReproduceResult result;
    const PiecewiseField field = coll_field(k, eps);
    auto [lo, hi] = default_search_interval(field);
    const CycleSearchResult search = find_cycles(field, lo, hi, grid);

    nlohmann::json cycles = nlohmann::json::array();
    int good = 0;
    for (const auto& c : search.cycles) {
        const double closure = reflow_closure(field, c);
        const bool ok = c.simple && c.residual_norm <= tols().cycle_residual && closure <= 1e-9;
        if (ok) ++good;
        nlohmann::json cj = cycle_to_json(c);
        cj["closure"] = closure;
        cj["certified"] = ok;
        cycles.push_back(std::move(cj));
    }
    result.pass = good >= k - 2;
    result.details = {{"k", k},
                      {"eps", eps},
                      {"grid", grid},
                      {"expected_at_least", k - 2},
                      {"certified", good},
                      {"cycles", cycles},
                      {"uncertified", search.uncertified.size()},
                      {"excluded", search.excluded.size()}};
    return result;
}

ReproduceResult reproduce_max_crossings(std::size_t M, std::size_t n, unsigned seed,
                                        int perturb_trials) {
    ReproduceResult result;
    const PiecewiseField field = max_crossings_field(M, n);
    const double C = 0.5 * static_cast<double>(n + 1);
    const double x0 = static_cast<double>(n + 1) + C;

    const Trajectory traj = flow_with_events(field, 0.0, x0, kTwoPi);
    std::size_t transversal = 0;
    for (const auto& e : traj.events) transversal += e.transversal ? 1 : 0;
    const bool count_ok = transversal == field.max_crossings() && !traj.tangency_flag;

    // Every solution is (n+1) cos(M t) + const, so each crossing time solves
    // (n+1) cos(M t) = x_i - C.
    double worst_time_err = 0.0;
    bool times_ok = count_ok;
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<double> expected;
        const double v = (static_cast<double>(i) - C) / static_cast<double>(n + 1);
        const double base = std::acos(v);
        for (std::size_t j = 0; j < M; ++j) {
            expected.push_back((base + kTwoPi * static_cast<double>(j)) / static_cast<double>(M));
            expected.push_back((kTwoPi * static_cast<double>(j + 1) - base) /
                               static_cast<double>(M));
        }
        std::sort(expected.begin(), expected.end());

        std::vector<double> actual;
        for (const auto& e : traj.events) {
            if (e.line_index == static_cast<int>(i) && e.transversal) actual.push_back(e.time);
        }
        std::sort(actual.begin(), actual.end());
        if (actual.size() != expected.size()) {
            times_ok = false;
            continue;
        }
        for (std::size_t j = 0; j < expected.size(); ++j) {
            worst_time_err = std::max(worst_time_err, std::abs(actual[j] - expected[j]));
        }
    }
    times_ok = times_ok && worst_time_err <= 1e-9;

    // The crossing count must survive small coefficient perturbations.
    std::mt19937 rng(seed);
    int persistent = 0;
    for (int trial = 0; trial < perturb_trials; ++trial) {
        std::vector<LinearPiece> pieces;
        for (const auto& p : field.pieces()) {
            pieces.push_back({p.a + random_trigpoly(rng, M, 1e-3),
                              p.b + random_trigpoly(rng, M, 1e-3)});
        }
        PiecewiseField perturbed(field.thresholds(), std::move(pieces));
        try {
            const Trajectory pt = flow_with_events(perturbed, 0.0, x0, kTwoPi);
            std::size_t count = 0;
            for (const auto& e : pt.events) count += e.transversal ? 1 : 0;
            if (!pt.tangency_flag && count == field.max_crossings()) ++persistent;
        } catch (const Error&) {
        }
    }

    result.pass = count_ok && times_ok && persistent == perturb_trials;
    result.details = {{"M", M},
                      {"n", n},
                      {"expected_crossings", field.max_crossings()},
                      {"transversal_crossings", transversal},
                      {"worst_time_error", worst_time_err},
                      {"closure_error", std::abs(traj.x1 - x0)},
                      {"perturb_trials", perturb_trials},
                      {"perturb_persistent", persistent}};
    return result;
}

ReproduceResult reproduce_constant_sign(std::size_t M, int fields, unsigned seed) {
    ReproduceResult result;
    std::mt19937 rng(seed);
    int checked = 0;
    int over_limit = 0;
    int fixed_point_failures = 0;
    double worst_fixed_point = 0.0;
    for (int trial = 0; trial < fields; ++trial) {
        PiecewiseField field({0.0}, {{random_trigpoly(rng, M, 1.0), random_trigpoly(rng, M, 1.0)},
                                     {random_trigpoly(rng, M, 1.0), random_trigpoly(rng, M, 1.0)}});
        const ConstantSignReport report = constant_sign_cycles(field);
        ++checked;
        if (report.cycles.size() > 2) ++over_limit;

        for (const auto& p : field.pieces()) {
            const Monodromy mono = monodromy(p.a, p.b);
            if (std::abs(mono.A - 1.0) <= 1e-8) continue;
            const double x_star = mono.B / (1.0 - mono.A);
            const double u = advance_in_piece(p.a, p.b, 0.0, x_star, kTwoPi);
            const double err = std::abs(u - x_star) / (1.0 + std::abs(x_star));
            worst_fixed_point = std::max(worst_fixed_point, err);
            if (err > 1e-9) ++fixed_point_failures;
        }
    }
    result.pass = over_limit == 0 && fixed_point_failures == 0;
    result.details = {{"fields", checked},
                      {"degree", M},
                      {"over_limit", over_limit},
                      {"fixed_point_failures", fixed_point_failures},
                      {"worst_fixed_point_error", worst_fixed_point}};
    return result;
}

ReproduceResult reproduce_gasull(std::size_t M, int fields, unsigned seed) {
    ReproduceResult result;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> bdist(0.5, 1.5);
    int crossing_cycles = 0;
    int checked = 0;
    for (int trial = 0; trial < fields; ++trial) {
        const PiecewiseField field = gasull_field(random_trigpoly(rng, M, 1.0), bdist(rng));
        const CycleSearchResult search = find_cycles(field, -6.0, 6.0, 256);
        crossing_cycles += static_cast<int>(search.cycles.size() + search.uncertified.size());
        ++checked;
    }
    result.pass = crossing_cycles == 0;
    result.details = {{"fields", checked},
                      {"degree", M},
                      {"sign_changing_cycles", crossing_cycles}};
    return result;
}

}  // namespace cylcycles
