#include <doctest.h>

#include <cmath>
#include <vector>

#include "cwc/asymptotics.hpp"
#include "cwc/designer.hpp"
#include "cwc/exact_comb.hpp"

using namespace cwc;

namespace {

// Cheapest (a, N) with N <= n_max meeting the noisy constraint, scanned exhaustively.
DesignSolution brute_force_noisy(const WordBudget& budget, const CostModel& cost, const ChannelModel& ch, int n_max,
                                 int g_grid)
{
    const double i_value = pairwise_exponent(ch).i_value;
    DesignSolution best;
    best.cost = INFINITY;
    for (int n = 1; n <= n_max; ++n) {
        for (int a = 1; a < n; ++a) {
            const double c = cost.evaluate(a, n);
            if (c >= best.cost) continue;
            if (!feasible(CodeParams(n, a), budget)) continue;
            const double g = g_of_r(static_cast<double>(a) / n, i_value, g_grid).g_value;
            if (budget.log_count() / n < g) {
                best.cost = c;
                best.a_int = a;
                best.n_int = n;
                best.feasible = true;
            }
        }
    }
    return best;
}

}  // namespace

TEST_SUITE("designer") {

TEST_CASE("noiseless design for 125 words")
{
    const auto s = design_noiseless(WordBudget(125), CostModel::linear(1, 1));
    CHECK(s.r_star == doctest::Approx(0.38196601125).epsilon(1e-8));
    CHECK(s.n_continuous == doctest::Approx(7.26042141950).epsilon(1e-8));
    CHECK(s.constraint_value == doctest::Approx(entropy(s.r_star)).epsilon(1e-12));
    CHECK(s.n_int == 9);
    CHECK(s.a_int == 4);
    CHECK(s.cost == 13);
    CHECK(s.feasible);
    CHECK(s.mode == DesignMode::noiseless);
}

TEST_CASE("the golden-ratio optimum is budget independent under unit costs")
{
    for (std::uint64_t w : {10ULL, 1000ULL, 1000000ULL}) {
        const auto s = design_noiseless(WordBudget(w), CostModel::linear(1, 1));
        CHECK(s.r_star == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-8));
    }
}

TEST_CASE("noiseless design agrees with brute force")
{
    const std::vector<CostModel> costs{CostModel::linear(1, 1), CostModel::linear(10, 1), CostModel::linear(1, 5),
                                       CostModel::linear(2, 3)};
    for (const auto& cost : costs) {
        for (std::uint64_t w : {2ULL, 5ULL, 37ULL, 125ULL, 1000ULL, 4096ULL, 100000ULL, 10000000ULL}) {
            const auto fast = design_noiseless(WordBudget(w), cost);
            const auto slow = brute_force_design(WordBudget(w), cost, 128);
            CAPTURE(w);
            CAPTURE(cost.name());
            CHECK(fast.cost == slow.cost);
            CHECK(fast.n_int == slow.n_int);
            CHECK(fast.a_int == slow.a_int);
        }
    }
}

TEST_CASE("scaling the cost model leaves the design unchanged")
{
    const auto base = design_noiseless(WordBudget(5000), CostModel::linear(2, 3));
    const auto scaled = design_noiseless(WordBudget(5000), CostModel::linear(20, 30));
    CHECK(base.r_star == doctest::Approx(scaled.r_star).epsilon(1e-7));
    CHECK(base.n_int == scaled.n_int);
    CHECK(base.a_int == scaled.a_int);
    CHECK(scaled.cost == doctest::Approx(10 * base.cost));
}

TEST_CASE("expensive active units push r* down")
{
    const auto cheap = design_noiseless(WordBudget(10000), CostModel::linear(1, 1));
    const auto dear = design_noiseless(WordBudget(10000), CostModel::linear(10, 1));
    CHECK(dear.r_star < cheap.r_star);
    CHECK(dear.a_int * dear.n_int > 0);
}

TEST_CASE("custom monotone cost models are accepted and broken ones rejected")
{
    const CostModel quad([](double a, double n) { return a * a + n; }, "quadratic");
    const auto s = design_noiseless(WordBudget(1000), quad);
    const auto b = brute_force_design(WordBudget(1000), quad, 128);
    CHECK(s.cost == b.cost);
    CHECK_THROWS_AS(CostModel([](double a, double n) { return n - a; }, "decreasing"), std::invalid_argument);
}

TEST_CASE("noisy design satisfies the strict threshold and agrees with brute force")
{
    DesignOptions opts;
    for (double p : {0.01, 0.05, 0.1}) {
        const ChannelModel ch(p, p);
        for (std::uint64_t w : {10ULL, 125ULL, 1000ULL}) {
            const auto s = design_noisy(WordBudget(w), CostModel::linear(1, 1), ch, opts);
            CAPTURE(p);
            CAPTURE(w);
            REQUIRE(s.feasible);
            CHECK(s.mode == DesignMode::noisy);
            const double g = g_of_r(static_cast<double>(s.a_int) / s.n_int, ch, opts.g_grid).g_value;
            CHECK(std::log(static_cast<double>(w)) / s.n_int < g);
            CHECK(feasible(CodeParams(s.n_int, s.a_int), WordBudget(w)));

            const auto b = brute_force_noisy(WordBudget(w), CostModel::linear(1, 1), ch, 4 * s.n_int, opts.g_grid);
            CHECK(s.cost == b.cost);
        }
    }
}

TEST_CASE("noisy design costs at least the noiseless one and grows with noise")
{
    const WordBudget w(1000);
    const auto clean = design_noiseless(w, CostModel::linear(1, 1));
    double prev = clean.cost;
    for (double p : {0.01, 0.05, 0.1, 0.2}) {
        const auto s = design_noisy(w, CostModel::linear(1, 1), ChannelModel(p, p));
        CHECK(s.cost >= prev);
        CHECK(s.constraint_value <= entropy(s.r_star));
        prev = s.cost;
    }
}

TEST_CASE("the safety factor tightens the noisy design")
{
    DesignOptions loose, tight;
    tight.safety_factor = 2.0;
    const ChannelModel ch(0.05, 0.05);
    const auto a = design_noisy(WordBudget(1000), CostModel::linear(1, 1), ch, loose);
    const auto b = design_noisy(WordBudget(1000), CostModel::linear(1, 1), ch, tight);
    CHECK(b.cost >= a.cost);
    const double g = g_of_r(static_cast<double>(b.a_int) / b.n_int, ch, tight.g_grid).g_value;
    CHECK(2.0 * std::log(1000.0) / b.n_int < g);
}

TEST_CASE("constraint curve")
{
    const auto rows = constraint_curve(WordBudget(125), DesignMode::noiseless, std::nullopt, 100);
    REQUIRE(rows.size() == 100);
    CHECK(std::isinf(rows.front().n_required));
    CHECK(std::isinf(rows.back().n_required));
    CHECK(rows[44].r == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
    CHECK(rows[44].n_required == doctest::Approx(7.028506253898559).epsilon(1e-12));
    CHECK(rows[44].cost == doctest::Approx(rows[44].n_required * (1 + 4.0 / 9.0)).epsilon(1e-12));

    const auto noisy = constraint_curve(WordBudget(125), DesignMode::noisy, ChannelModel(0.05, 0.05), 100);
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) CHECK(noisy[i].n_required >= rows[i].n_required);
    CHECK_THROWS(constraint_curve(WordBudget(125), DesignMode::noisy, std::nullopt, 100));
}

}  // TEST_SUITE
