#include "cylcycles/bounds.hpp"

#include <algorithm>

#include "cylcycles/errors.hpp"

namespace cylcycles {

namespace {

mpz_class pow_ui(const mpz_class& base, unsigned long exp) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

mpz_class two_pow(unsigned long exp) { return pow_ui(2, exp); }

}  // namespace

mpz_class khovanskii_count(std::size_t n_vars, std::size_t r, std::size_t alpha,
                           const std::vector<std::size_t>& betas) {
    if (n_vars == 0 || betas.size() != n_vars) {
        throw ArgumentMismatch("khovanskii_count: |betas| must equal n_vars >= 1");
    }
    if (alpha < 1) throw ArgumentMismatch("khovanskii_count: alpha must be >= 1");

    mpz_class beta_prod = 1;
    std::size_t beta_sum = 0;
    for (std::size_t b : betas) {
        if (b < 1) throw ArgumentMismatch("khovanskii_count: betas must be >= 1");
        beta_prod *= static_cast<unsigned long>(b);
        beta_sum += b;
    }
    const std::size_t base = std::min(n_vars, r) * alpha + beta_sum - n_vars + 1;
    const unsigned long half = static_cast<unsigned long>(r) * (r - (r > 0 ? 1 : 0)) / 2;
    return two_pow(half) * beta_prod *
           pow_ui(mpz_class(static_cast<unsigned long>(base)), static_cast<unsigned long>(r));
}

BoundReport bound_two_regions(std::size_t m, std::size_t N) {
    if (m < 1 || N < m) throw ArgumentMismatch("bound_two_regions requires m >= 1 and N >= m");
    const unsigned long e2 = 4ul * m * (8ul * m - 1);
    const unsigned long base = 6ul * N * m + 2ul * m + 1;
    const unsigned long r = 8ul * m;

    BoundReport report;
    report.formula = BoundFormula::two_region;
    report.m = m;
    report.N = N;
    report.profile = {r, 3 * N + 1, std::vector<std::size_t>(2 * m, 1)};
    report.value = two_pow(e2) * pow_ui(mpz_class(base), r) + 2;
    report.factored = "2^" + std::to_string(e2) + " * " + std::to_string(base) + "^" +
                      std::to_string(r) + " + 2";
    return report;
}

BoundReport bound_general(std::size_t n, std::size_t M) {
    if (n < 1 || M < 1) throw ArgumentMismatch("bound_general requires n >= 1 and M >= 1");
    const unsigned long k = 2ul * M * n;
    const unsigned long r = 8ul * M * n;
    const unsigned long e2 = 4ul * M * n * (8ul * M * n - 1);
    const unsigned long base = 6ul * M * M * n + 2ul * M * n + 1;

    BoundReport report;
    report.formula = BoundFormula::general;
    report.n = n;
    report.M = M;
    report.sequence_factor = k;
    report.profile = {r, 3 * M + 1, std::vector<std::size_t>(k, 1)};
    report.value = mpz_class(k) * two_pow(e2) * pow_ui(mpz_class(base), r) + 2;
    report.factored = std::to_string(k) + " * 2^" + std::to_string(e2) + " * " +
                      std::to_string(base) + "^" + std::to_string(r) + " + 2";
    return report;
}

PfaffianProfile pfaffian_profile_single(std::size_t m) {
    return {4, 3 * m + 1, {1}};
}

PfaffianProfile pfaffian_combine(const PfaffianProfile& p1, const PfaffianProfile& p2,
                                 PfaffianOp op, bool shared_chain) {
    if (p1.betas.size() != 1 || p2.betas.size() != 1) {
        throw ArgumentMismatch("pfaffian_combine expects single-beta profiles");
    }
    PfaffianProfile out;
    if (shared_chain) {
        if (p1.order_r != p2.order_r) {
            throw ArgumentMismatch("shared chain requires equal orders");
        }
        out.order_r = p1.order_r;
    } else {
        out.order_r = p1.order_r + p2.order_r;
    }
    out.alpha = std::max(p1.alpha, p2.alpha);
    out.betas = {op == PfaffianOp::sum ? std::max(p1.betas[0], p2.betas[0])
                                       : p1.betas[0] + p2.betas[0]};
    return out;
}

PfaffianProfile crossing_system_profile(std::size_t k, std::size_t n, std::size_t M) {
    if (k % 2 != 0) throw ArgumentMismatch("crossing count k must be even");
    const std::size_t r = 4 * k;
    if (r > 8 * M * n) {
        throw ArgumentMismatch("chain length 4k exceeds 8Mn: sequence is infeasible");
    }
    return {r, 3 * M + 1, std::vector<std::size_t>(k, 1)};
}

}  // namespace cylcycles
