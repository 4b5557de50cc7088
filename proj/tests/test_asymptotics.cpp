#include <doctest.h>

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "cwc/asymptotics.hpp"
#include "cwc/exact_comb.hpp"

using namespace cwc;

namespace {

double log_quadrature(const LaplaceProblem& prob)
{
    // integrate exp{n (f(x) - f(lo))} and add the peak back
    const double n = prob.scale;
    const double peak = prob.f(prob.lo);
    auto g = [&](double x) { return std::exp(n * (prob.f(x) - peak)); };
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, prob.lo, prob.hi, 15, 1e-14);
    return n * peak + std::log(v);
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("binary entropy values and symmetry")
{
    CHECK(entropy(0.0) == 0.0);
    CHECK(entropy(1.0) == 0.0);
    CHECK(entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(entropy(4.0 / 9.0) == doctest::Approx(0.68696157659732334).epsilon(1e-14));
    CHECK(9.0 * entropy(4.0 / 9.0) == doctest::Approx(6.18265418937591).epsilon(1e-13));
    for (double r = 0.01; r < 1.0; r += 0.01) CHECK(entropy(r) == doctest::Approx(entropy(1.0 - r)).epsilon(1e-14));
    CHECK_THROWS_AS(entropy(-0.1), std::domain_error);
    CHECK_THROWS_AS(entropy(1.1), std::domain_error);
}

TEST_CASE("multinomial entropy reduces to the binary case")
{
    const std::array<double, 2> two{0.3, 0.7};
    CHECK(entropy_multi(two) == doctest::Approx(entropy(0.3)).epsilon(1e-15));
    const std::array<double, 4> uniform{0.25, 0.25, 0.25, 0.25};
    CHECK(entropy_multi(uniform) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    const std::array<double, 3> bad{0.5, 0.5, 0.5};
    CHECK_THROWS(entropy_multi(bad));
}

TEST_CASE("Bernoulli KL divergence")
{
    CHECK(kl_bernoulli(0.5, 0.1) == doctest::Approx(0.51082562376599068).epsilon(1e-14));
    CHECK(kl_bernoulli(0.0, 0.3) == doctest::Approx(0.35667494393873238).epsilon(1e-14));
    CHECK(kl_bernoulli(0.3, 0.3) == 0.0);
    for (double x = 0.0; x <= 1.0; x += 0.05) CHECK(kl_bernoulli(x, 0.2) >= 0.0);
    CHECK_THROWS(kl_bernoulli(0.5, 0.0));
    CHECK_THROWS(kl_bernoulli(0.5, 1.0));
}

TEST_CASE("Stirling estimate of ln C(n, k)")
{
    CHECK(log_binom(100, 50) == doctest::Approx(66.783841652017426).epsilon(1e-13));
    CHECK(log_binom_approx(100, 50) == doctest::Approx(69.314718055994531).epsilon(1e-13));
    CHECK(log_binom(9, 4) == doctest::Approx(4.83628190695147800).epsilon(1e-14));
    CHECK(log_binom_approx(9, 4) == doctest::Approx(6.18265418937591).epsilon(1e-13));

    // approximation overshoots, and only by O(ln n)
    for (long n : {10L, 50L, 100L, 500L, 2000L, 10000L}) {
        for (long k : {1L, n / 5, n / 3, n / 2}) {
            const double gap = log_binom_approx(n, k) - log_binom(n, k);
            CHECK(gap >= 0.0);
            CHECK(gap <= std::log(static_cast<double>(n)) + 1.0);
        }
    }
}

TEST_CASE("the central Stirling gap grows like half a log")
{
    // gap(n) ~ c ln n + b at k = n/2; least-squares fit of c
    const std::array<long, 6> ns{64, 128, 256, 512, 1024, 2048};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (long n : ns) {
        const double x = std::log(static_cast<double>(n));
        const double y = log_binom_approx(n, n / 2) - log_binom(n, n / 2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(ns.size());
    const double c = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(c == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("binomial-tail estimate")
{
    const double exact = log_binom(20, 10) + 10 * std::log(0.1) + 10 * std::log(0.9);
    CHECK(exact == doctest::Approx(-11.952664771916265).epsilon(1e-13));
    CHECK(log_binom_tail_approx(20, 10, 0.1) == doctest::Approx(-10.216512475319814).epsilon(1e-13));
    CHECK(log_binom_tail_approx(20, 10, 0.1) >= exact);
}

TEST_CASE("boundary Laplace estimate against quadrature")
{
    LaplaceProblem quad{[](double x) { return -x * x - x; }, [](double x) { return -2 * x - 1; }, 0.0, 0.5, 200.0};
    CHECK(log_quadrature(quad) == doctest::Approx(-5.30807889086179).epsilon(1e-10));
    CHECK(laplace_boundary(quad) == doctest::Approx(-5.29831736654804).epsilon(1e-12));

    double prev_gap = INFINITY;
    for (double n : {50.0, 200.0, 1000.0, 5000.0}) {
        quad.scale = n;
        const double gap = std::abs(laplace_boundary(quad) - log_quadrature(quad));
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-3);

    // linear f: the estimate is exact up to the truncated tail exp(-n/2)
    LaplaceProblem lin{[](double x) { return -x; }, [](double) { return -1.0; }, 0.0, 1.0, 10.0};
    CHECK(laplace_boundary(lin) - log_quadrature(lin) == doctest::Approx(-std::log1p(-std::exp(-10.0))).epsilon(1e-6));
    CHECK(laplace_boundary(lin) - log_quadrature(lin) == doctest::Approx(4.54e-5).epsilon(1e-2));
    for (double n : {100.0, 1000.0}) {
        lin.scale = n;
        CHECK(std::abs(laplace_boundary(lin) - log_quadrature(lin)) < 1e-12);
    }
}

TEST_CASE("Laplace rejects an interior maximum")
{
    const LaplaceProblem flat{[](double x) { return -x * x; }, [](double x) { return -2 * x; }, 0.0, 1.0, 10.0};
    CHECK_THROWS_AS(laplace_boundary(flat), std::domain_error);
}

}  // TEST_SUITE
