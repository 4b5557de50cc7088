#include "cwc/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace cwc {

namespace {

// x ln(x / y) with 0 ln 0 = 0
double rel_entropy_term(double x, double y)
{
    return x > 0.0 ? x * std::log(x / y) : 0.0;
}

}  // namespace

double entropy(double r)
{
    if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("entropy: argument outside [0, 1]");
    if (r == 0.0 || r == 1.0) return 0.0;
    return -r * std::log(r) - (1.0 - r) * std::log1p(-r);
}

double entropy_multi(std::span<const double> p)
{
    double sum = 0.0;
    double h = 0.0;
    for (double x : p) {
        if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("entropy_multi: component outside [0, 1]");
        sum += x;
        if (x > 0.0) h -= x * std::log(x);
    }
    if (p.empty() || std::abs(sum - 1.0) > 1e-12) throw std::domain_error("entropy_multi: components must sum to 1");
    return h;
}

double kl_bernoulli(double x, double p)
{
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("kl_bernoulli: x outside [0, 1]");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("kl_bernoulli: p must lie in (0, 1)");
    return std::max(0.0, rel_entropy_term(x, p) + rel_entropy_term(1.0 - x, 1.0 - p));
}

double log_binom_approx(long n, long k)
{
    if (n < 1 || k < 0 || k > n) throw std::domain_error("log_binom_approx: need 0 <= k <= n, n >= 1");
    return static_cast<double>(n) * entropy(static_cast<double>(k) / static_cast<double>(n));
}

double log_binom_tail_approx(long n, long k, double p)
{
    if (n < 1 || k < 0 || k > n) throw std::domain_error("log_binom_tail_approx: need 0 <= k <= n, n >= 1");
    return -static_cast<double>(n) * kl_bernoulli(static_cast<double>(k) / static_cast<double>(n), p);
}

double laplace_boundary(const LaplaceProblem& problem)
{
    if (!problem.f || !problem.f_prime) throw std::invalid_argument("laplace_boundary: f and f' are required");
    if (!(problem.lo < problem.hi)) throw std::invalid_argument("laplace_boundary: need lo < hi");
    if (!(problem.scale > 0.0)) throw std::invalid_argument("laplace_boundary: scale must be positive");
    const double slope = problem.f_prime(problem.lo);
    if (slope == 0.0) throw std::domain_error("laplace_boundary: f'(lo) = 0, interior Laplace case not handled");
    return problem.scale * problem.f(problem.lo) - std::log(problem.scale * std::abs(slope));
}

}  // namespace cwc
