#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace cylcycles {

// Order and degree bookkeeping of a Pfaffian chain: order r, chain degree
// alpha, per-equation degrees beta_i.
struct PfaffianProfile {
    std::size_t order_r = 0;
    std::size_t alpha = 1;
    std::vector<std::size_t> betas{1};
};

enum class PfaffianOp { sum, product };

enum class BoundFormula { khovanskii, general, two_region };

struct BoundReport {
    mpz_class value;
    BoundFormula formula;
    PfaffianProfile profile;
    // Structural inputs that produced the value.
    std::size_t n = 0, M = 0, m = 0, N = 0;
    std::size_t sequence_factor = 1;  // the 2Mn multiplicity in the general bound
    // Human-readable factored rendering, e.g. "4 * 2^496 * 28^16 + 2".
    std::string factored;
};

// 2^{r(r-1)/2} * prod beta_i * (min{n,r} alpha + sum beta_i - n + 1)^r,
// evaluated exactly.
mpz_class khovanskii_count(std::size_t n_vars, std::size_t r, std::size_t alpha,
                           const std::vector<std::size_t>& betas);

// Two-region Hilbert-number bound 2^{4m(8m-1)} (6Nm + 2m + 1)^{8m} + 2.
BoundReport bound_two_regions(std::size_t m, std::size_t N);

// General bound 2Mn * 2^{4Mn(8Mn-1)} (6M^2 n + 2Mn + 1)^{8Mn} + 2.
BoundReport bound_general(std::size_t n, std::size_t M);

// Profile of one transition function: order 4, degree (3m+1, 1).
PfaffianProfile pfaffian_profile_single(std::size_t m);

// Ring-lemma bookkeeping for sums and products of single-beta profiles;
// shared_chain keeps the common order instead of adding.
PfaffianProfile pfaffian_combine(const PfaffianProfile& p1, const PfaffianProfile& p2,
                                 PfaffianOp op, bool shared_chain = false);

// Chain profile of the k-leg crossing system (r = 4k, alpha = 3M+1); asserts
// r <= 8Mn.
PfaffianProfile crossing_system_profile(std::size_t k, std::size_t n, std::size_t M);

}  // namespace cylcycles
