#include "cwc/designer.hpp"

#include <cmath>
#include <limits>

#include "cwc/asymptotics.hpp"
#include "cwc/exact_comb.hpp"
#include "cwc/minimize.hpp"

namespace cwc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
    int a = 0;
    int n = 0;
    double cost = kInf;
};

// Smallest N for which some weight (the central one) reaches |W| words.
int central_length(const WordBudget& budget)
{
    int n = 1;
    while (binom_exact(n, n / 2) < budget.count()) ++n;
    return n;
}

// Cheapest feasible (a, N) with N in [n_lo, n_hi]; N ascending, a ascending,
// strict improvement only, so ties keep the smallest N then the smallest a.
// Because the cost is monotone in a, the first feasible a of each N is the
// cheapest for that N; and once cost(0, N) reaches the incumbent no larger N
// can win.
template <class Feasible>
std::optional<Candidate> scan_window(int n_lo, int n_hi, const CostModel& cost, Feasible&& ok)
{
    std::optional<Candidate> best;
    for (int n = n_lo; n <= n_hi; ++n) {
        if (best && cost(0, n) >= best->cost) break;
        for (int a = 0; a <= n; ++a) {
            const double c = cost(a, n);
            if (best && c >= best->cost) break;
            if (ok(a, n)) {
                best = Candidate{a, n, c};
                break;
            }
        }
    }
    return best;
}

template <class Feasible>
Candidate repair(double n_star, const WordBudget& budget, const CostModel& cost, int factor, Feasible&& ok)
{
    const int n_central = central_length(budget);
    const int n_lo = std::max(1, std::min(static_cast<int>(std::floor(n_star)), n_central));
    const int n_ceil = static_cast<int>(std::ceil(n_star));
    for (int attempt = 0; attempt < 2; ++attempt, factor *= 2) {
        const int n_hi = std::max(n_lo, factor * n_ceil);
        if (auto best = scan_window(n_lo, n_hi, cost, ok)) return *best;
    }
    throw InfeasibleError("integer repair: no feasible (a, N) in the repair window");
}

void require_budget(const WordBudget& budget)
{
    if (budget.count() < 2) throw std::invalid_argument("design: |W| must be >= 2");
}

}  // namespace

DesignSolution design_noiseless(const WordBudget& budget, const CostModel& cost, const DesignOptions& options)
{
    require_budget(budget);
    const double log_words = budget.log_count();
    auto phi = [&](double r) {
        const double n = log_words / entropy(r);
        return cost(r * n, n);
    };
    const auto grid = logit_grid(options.r_lo, options.r_hi, options.r_grid);
    const Minimum m = grid_minimize(phi, grid, options.refine_cells, 1e-9, ExecPolicy::serial);

    DesignSolution s;
    s.mode = DesignMode::noiseless;
    s.r_star = m.x;
    s.constraint_value = entropy(m.x);
    s.n_continuous = log_words / s.constraint_value;
    s.continuous_cost = m.value;

    const Candidate c = repair(s.n_continuous, budget, cost, options.repair_factor,
                               [&](int a, int n) { return binom_exact(n, a) >= budget.count(); });
    s.a_int = c.a;
    s.n_int = c.n;
    s.cost = c.cost;
    s.feasible = true;
    return s;
}

DesignSolution design_noisy(const WordBudget& budget, const CostModel& cost, const ChannelModel& channel,
                            const DesignOptions& options)
{
    require_budget(budget);
    if (!(options.safety_factor >= 1.0)) throw std::invalid_argument("design_noisy: safety factor must be >= 1");
    channel.require_analyzable();
    const double i_value = pairwise_exponent(channel).i_value;
    const double log_words = options.safety_factor * budget.log_count();

    auto g = [&](double r) { return g_of_r(r, i_value, options.g_grid).g_value; };
    auto phi = [&](double r) {
        const double gr = g(r);
        if (!(gr > 0.0)) return kInf;
        const double n = log_words / gr;
        return cost(r * n, n);
    };
    const auto grid = logit_grid(options.r_lo, options.r_hi, options.r_grid);
    const Minimum m = grid_minimize(phi, grid, options.refine_cells, 1e-9, ExecPolicy::serial);
    if (!std::isfinite(m.value)) throw InfeasibleError("design_noisy: G(r) vanishes for every r");

    DesignSolution s;
    s.mode = DesignMode::noisy;
    s.r_star = m.x;
    s.constraint_value = g(m.x);
    s.n_continuous = log_words / s.constraint_value;
    s.continuous_cost = m.value;

    const Candidate c = repair(s.n_continuous, budget, cost, options.repair_factor, [&](int a, int n) {
        if (a == 0 || a == n) return false;
        if (binom_exact(n, a) < budget.count()) return false;
        return log_words / n < g(static_cast<double>(a) / n);
    });
    s.a_int = c.a;
    s.n_int = c.n;
    s.cost = c.cost;
    s.feasible = true;
    return s;
}

std::vector<CurveRow> constraint_curve(const WordBudget& budget, DesignMode mode,
                                       const std::optional<ChannelModel>& channel, int samples,
                                       const CostModel& cost, int g_grid)
{
    if (samples < 2) throw std::invalid_argument("constraint_curve: samples must be >= 2");
    double i_value = 0.0;
    if (mode == DesignMode::noisy) {
        if (!channel) throw std::invalid_argument("constraint_curve: noisy mode needs a channel");
        i_value = pairwise_exponent(*channel, g_grid).i_value;
    }
    const double log_words = budget.log_count();
    std::vector<CurveRow> rows(samples);
    for (int i = 0; i < samples; ++i) {
        const double r = static_cast<double>(i) / (samples - 1);
        double rate = 0.0;
        if (i > 0 && i < samples - 1)
            rate = mode == DesignMode::noiseless ? entropy(r) : g_of_r(r, i_value, g_grid).g_value;
        const double n_required = rate > 0.0 ? log_words / rate : kInf;
        rows[i] = {r, n_required, std::isfinite(n_required) ? cost(r * n_required, n_required) : kInf};
    }
    return rows;
}

}  // namespace cwc
