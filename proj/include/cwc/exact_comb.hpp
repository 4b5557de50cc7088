#pragma once

// Exact combinatorics: the ground truth every asymptotic result is checked
// against.

#include <cmath>
#include <vector>

#include "cwc/cost.hpp"
#include "cwc/types.hpp"

namespace cwc {

/// Largest N handled with exact rationals; beyond it the log-domain double
/// path is used (relative error <= 1e-12).
inline constexpr int kExactLimit = 256;

/// C(n, k); zero when k < 0 or k > n.
BigInt binom_exact(long n, long k);

/// ln C(n, k), -inf outside the support. Exact-then-rounded for
/// n <= kExactLimit, lgamma-based above.
double log_binom(long n, long k);

/// C(N, a) >= |W|.
bool feasible(const CodeParams& params, const WordBudget& budget);

/// Hypergeometric probability that two uniformly random weight-a words of
/// length N share exactly o active units.
Rational overlap_pmf_exact(const CodeParams& params, int o);

/// Double-precision version of overlap_pmf_exact, valid for any N.
double overlap_pmf(const CodeParams& params, int o);

/// ln of overlap_pmf; -inf outside the support.
double log_overlap_pmf(const CodeParams& params, int o);

/// Probability that u 1->0 trials at p10 plus u 0->1 trials at p01 produce
/// at least u successes in total, i.e. that the received word is at least as
/// close to a competitor differing in u active units as to the sent word.
/// Ties count as errors. Real may be double or Rational.
template <class Real>
Real pairwise_error_exact(int u, const Real& p10, const Real& p01)
{
    if (u < 0) throw std::domain_error("pairwise_error_exact: u must be >= 0");
    if (u == 0) return Real(1);
    const Real q10 = Real(1) - p10;
    const Real q01 = Real(1) - p01;

    auto pmf_row = [u](const Real& p, const Real& q) {
        std::vector<Real> p_pow(u + 1, Real(1)), q_pow(u + 1, Real(1));
        for (int k = 1; k <= u; ++k) {
            p_pow[k] = p_pow[k - 1] * p;
            q_pow[k] = q_pow[k - 1] * q;
        }
        std::vector<Real> row(u + 1);
        for (int k = 0; k <= u; ++k)
            row[k] = static_cast<Real>(binom_exact(u, k)) * p_pow[k] * q_pow[u - k];
        return row;
    };
    const auto flips10 = pmf_row(p10, q10);
    const auto flips01 = pmf_row(p01, q01);

    // tail[m] = Pr[#0->1 flips >= m]
    std::vector<Real> tail(u + 2, Real(0));
    for (int m = u; m >= 0; --m) tail[m] = tail[m + 1] + flips01[m];

    Real total(0);
    for (int j = 0; j <= u; ++j) total += flips10[j] * tail[u - j];
    return total;
}

double pairwise_error_exact(int u, const ChannelModel& channel);

/// ln of pairwise_error_exact computed by log-sum-exp; stays finite where the
/// probability itself underflows.
double log_pairwise_error(int u, const ChannelModel& channel);

/// Exhaustive scan of all (a, N) with N <= n_max, N ascending then a
/// ascending; returns the cheapest pair with C(N, a) >= |W|. Ties go to the
/// smallest N, then the smallest a. Throws InfeasibleError when nothing in
/// range is feasible.
DesignSolution brute_force_design(const WordBudget& budget, const CostModel& cost, int n_max);

}  // namespace cwc
