#include "cwc/exact_comb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>

#include "cwc/asymptotics.hpp"

namespace cwc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln C(n, k) for n <= kExactLimit, taken from exact Pascal rows.
const std::vector<std::vector<double>>& exact_log_table()
{
    static const auto table = [] {
        std::vector<std::vector<double>> t(kExactLimit + 1);
        std::vector<BigInt> row{1};
        for (int n = 0; n <= kExactLimit; ++n) {
            t[n].resize(n + 1);
            for (int k = 0; k <= n; ++k) t[n][k] = log_big(row[k]);
            std::vector<BigInt> next(n + 2);
            next[0] = next[n + 1] = 1;
            for (int k = 1; k <= n; ++k) next[k] = row[k - 1] + row[k];
            row = std::move(next);
        }
        return t;
    }();
    return table;
}

double log_factorial(long n)
{
    int sign = 0;
    return ::lgamma_r(static_cast<double>(n) + 1.0, &sign);
}

// k ln p with the convention 0 ln 0 = 0
double xlogy(long k, double p)
{
    if (k == 0) return 0.0;
    return p > 0.0 ? static_cast<double>(k) * std::log(p) : kNegInf;
}

double log_sum_exp(std::span<const double> terms)
{
    const double peak = *std::max_element(terms.begin(), terms.end());
    if (peak == kNegInf) return kNegInf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - peak);
    return peak + std::log(s);
}

}  // namespace

BigInt binom_exact(long n, long k)
{
    if (n < 0) throw std::domain_error("binom_exact: n must be >= 0");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (long i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

double log_binom(long n, long k)
{
    if (n < 0) throw std::domain_error("log_binom: n must be >= 0");
    if (k < 0 || k > n) return kNegInf;
    if (n <= kExactLimit) return exact_log_table()[n][k];
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

bool feasible(const CodeParams& params, const WordBudget& budget)
{
    return binom_exact(params.n(), params.a()) >= budget.count();
}

Rational overlap_pmf_exact(const CodeParams& params, int o)
{
    const int n = params.n();
    const int a = params.a();
    if (o < 0 || o > a) return Rational(0);
    return Rational(binom_exact(a, o) * binom_exact(n - a, a - o), binom_exact(n, a));
}

double log_overlap_pmf(const CodeParams& params, int o)
{
    const int n = params.n();
    const int a = params.a();
    if (o < 0 || o > a || a - o > n - a) return kNegInf;
    return log_binom(a, o) + log_binom(n - a, a - o) - log_binom(n, a);
}

double overlap_pmf(const CodeParams& params, int o)
{
    return std::exp(log_overlap_pmf(params, o));
}

double pairwise_error_exact(int u, const ChannelModel& channel)
{
    if (u <= kExactLimit) return pairwise_error_exact<double>(u, channel.p10(), channel.p01());
    return std::exp(log_pairwise_error(u, channel));
}

double log_pairwise_error(int u, const ChannelModel& channel)
{
    if (u < 0) throw std::domain_error("log_pairwise_error: u must be >= 0");
    if (u == 0) return 0.0;

    auto log_row = [u](double p) {
        std::vector<double> row(u + 1);
        for (int k = 0; k <= u; ++k) row[k] = log_binom(u, k) + xlogy(k, p) + xlogy(u - k, 1.0 - p);
        return row;
    };
    const auto flips10 = log_row(channel.p10());
    const auto flips01 = log_row(channel.p01());

    // log Pr[#0->1 flips >= m], accumulated from the top
    std::vector<double> tail(u + 2, kNegInf);
    for (int m = u; m >= 0; --m) {
        const double hi = std::max(tail[m + 1], flips01[m]);
        tail[m] = hi == kNegInf ? kNegInf : hi + std::log(std::exp(tail[m + 1] - hi) + std::exp(flips01[m] - hi));
    }

    std::vector<double> terms(u + 1);
    for (int j = 0; j <= u; ++j) terms[j] = flips10[j] + tail[u - j];
    return std::min(0.0, log_sum_exp(terms));
}

DesignSolution brute_force_design(const WordBudget& budget, const CostModel& cost, int n_max)
{
    if (n_max < 1) throw std::invalid_argument("brute_force_design: n_max must be >= 1");

    std::optional<DesignSolution> best;
    std::vector<BigInt> row{1, 1};  // Pascal row for N = 1
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) {
            std::vector<BigInt> next(n + 1);
            next[0] = next[n] = 1;
            for (int k = 1; k < n; ++k) next[k] = row[k - 1] + row[k];
            row = std::move(next);
        }
        for (int a = 0; a <= n; ++a) {
            if (row[a] < budget.count()) continue;
            const double c = cost.evaluate(a, n);
            if (!best || c < best->cost) {
                DesignSolution s;
                s.mode = DesignMode::noiseless;
                s.r_star = static_cast<double>(a) / n;
                s.n_continuous = n;
                s.continuous_cost = c;
                s.a_int = a;
                s.n_int = n;
                s.cost = c;
                s.constraint_value = entropy(s.r_star);
                s.feasible = true;
                best = s;
            }
        }
    }
    if (!best) throw InfeasibleError("brute_force_design: no feasible (a, N) with N <= n_max");
    return *best;
}

}  // namespace cwc
