#pragma once

#include <functional>
#include <span>

namespace cwc {

/// Binary entropy in nats, H(0) = H(1) = 0. Throws std::domain_error outside
/// [0, 1].
double entropy(double r);

/// Entropy of a point on the probability simplex (components in [0, 1],
/// summing to 1 within 1e-12).
double entropy_multi(std::span<const double> p);

/// KL divergence between Bernoulli(x) and Bernoulli(p). p must lie strictly
/// inside (0, 1); the infinite cases are refused rather than returned.
double kl_bernoulli(double x, double p);

/// Stirling estimate of ln C(n, k): n * H(k / n). Error is O(ln n).
double log_binom_approx(long n, long k);

/// Stirling estimate of ln[C(n,k) p^k (1-p)^(n-k)]: -n * KL(k / n, p).
double log_binom_tail_approx(long n, long k, double p);

/// Integral of exp{n f(x)} over [lo, hi] whose maximum sits at the boundary
/// lo with nonzero slope.
struct LaplaceProblem {
    std::function<double(double)> f;
    std::function<double(double)> f_prime;
    double lo = 0.0;
    double hi = 1.0;
    double scale = 1.0;
};

/// First-order boundary Laplace estimate of ln ∫ exp{n f}:
/// n f(lo) - ln(n |f'(lo)|). Rejects f'(lo) == 0.
double laplace_boundary(const LaplaceProblem& problem);

}  // namespace cwc
