#include "cwc/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cwc/asymptotics.hpp"
#include "cwc/exact_comb.hpp"
#include "cwc/minimize.hpp"

namespace cwc {

PairwiseExponent pairwise_exponent(const ChannelModel& channel, int grid)
{
    channel.require_analyzable();
    if (grid < 100) throw std::invalid_argument("pairwise_exponent: grid must be >= 100");
    const double p10 = channel.p10();
    const double p01 = channel.p01();
    // The minimizer sits on the active constraint x + y = 1.
    auto along_boundary = [p10, p01](double x) { return kl_bernoulli(x, p10) + kl_bernoulli(1.0 - x, p01); };
    const auto nodes = uniform_grid(0.0, 1.0, grid);
    const Minimum m = grid_minimize(along_boundary, nodes, 1, 1e-9, ExecPolicy::serial);
    return {m.value, m.x, 1.0 - m.x};
}

std::vector<ExponentRow> exponent_vs_exact(std::span<const int> u_list, const ChannelModel& channel, int grid)
{
    const double i_value = pairwise_exponent(channel, grid).i_value;
    std::vector<ExponentRow> rows;
    rows.reserve(u_list.size());
    for (int u : u_list) {
        if (u < 1) throw std::domain_error("exponent_vs_exact: u must be >= 1");
        ExponentRow row;
        row.u = u;
        row.p_exact = pairwise_error_exact(u, channel);
        row.log_p_exact = log_pairwise_error(u, channel);
        row.normalized = -row.log_p_exact / u;
        row.i_value = i_value;
        rows.push_back(row);
    }
    return rows;
}

double min_overlap_fraction(double r)
{
    return std::max(0.0, (2.0 * r - 1.0) / r);
}

namespace {

void require_ratio(double r)
{
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("activity ratio r must lie in (0, 1)");
}

// H((1-z) r / (1-r)); rounding slack of 1e-12 is clamped
double competitor_entropy(double r, double z)
{
    double w = (1.0 - z) * r / (1.0 - r);
    if (w < -1e-12 || w > 1.0 + 1e-12 || !(z <= 1.0 + 1e-12))
        throw std::domain_error("overlap fraction outside the hypergeometric support");
    w = std::clamp(w, 0.0, 1.0);
    return entropy(w);
}

}  // namespace

double expected_log_enumerator(double r, double z, double rho)
{
    require_ratio(r);
    if (!(z >= 0.0 && z <= 1.0)) throw std::domain_error("expected_log_enumerator: z outside [0, 1]");
    if (!(rho >= 0.0)) throw std::domain_error("expected_log_enumerator: rho must be >= 0");
    return rho + r * entropy(z) + (1.0 - r) * competitor_entropy(r, z) - entropy(r);
}

double g_objective(double r, double z, double i_value)
{
    return entropy(r) + r * (1.0 - z) * i_value - r * entropy(std::clamp(z, 0.0, 1.0)) -
           (1.0 - r) * competitor_entropy(r, z);
}

GResult g_of_r(double r, double i_value, int grid, ExecPolicy policy)
{
    require_ratio(r);
    if (grid < 2) throw std::invalid_argument("g_of_r: grid must be >= 2");
    const double z_lo = min_overlap_fraction(r);
    const auto nodes = uniform_grid(z_lo, 1.0, grid);
    const Minimum m = grid_minimize([r, i_value](double z) { return g_objective(r, z, i_value); }, nodes, 1, 1e-9,
                                    policy);
    return {std::clamp(m.value, 0.0, entropy(r)), m.x};
}

GResult g_of_r(double r, const ChannelModel& channel, int grid, ExecPolicy policy)
{
    return g_of_r(r, pairwise_exponent(channel, std::max(grid, 100)).i_value, grid, policy);
}

ExponentReport exponent_report(const ChannelModel& channel, std::optional<double> r, int grid)
{
    const PairwiseExponent pe = pairwise_exponent(channel, grid);
    ExponentReport report{pe.i_value, pe.x_star, pe.y_star, r, std::nullopt, std::nullopt};
    if (r) {
        const GResult g = g_of_r(*r, pe.i_value, grid);
        report.g_value = g.g_value;
        report.z_star = g.z_star;
    }
    return report;
}

ThresholdVerdict threshold_check(const CodeParams& params, const WordBudget& budget, const ChannelModel& channel,
                                 int grid)
{
    ThresholdVerdict v;
    v.rho = budget.rho(params);
    // a single codeword (a = 0 or a = N) has no rate to spend
    v.g_value = (params.a() == 0 || params.a() == params.n()) ? 0.0 : g_of_r(params.ratio(), channel, grid).g_value;
    v.verdict = v.rho < v.g_value ? Verdict::below : Verdict::above;
    v.margin = v.g_value - v.rho;
    v.predicted_log_p = params.n() * (v.rho - v.g_value);
    return v;
}

double union_bound(const OverlapSpectrum& spectrum, const ChannelModel& channel)
{
    const int a = spectrum.params.a();
    double total = 0.0;
    for (int o = 0; o <= a; ++o) {
        if (spectrum.counts[o] == 0) continue;
        total += static_cast<double>(spectrum.counts[o]) * pairwise_error_exact(a - o, channel);
    }
    return std::min(1.0, total);
}

double expected_union_bound(const CodeParams& params, const WordBudget& budget, const ChannelModel& channel)
{
    if (budget.count() == 1) return 0.0;
    const double log_competitors = log_big(budget.count() - 1);
    const int a = params.a();
    std::vector<double> terms;
    for (int o = std::max(0, 2 * a - params.n()); o <= a; ++o)
        terms.push_back(log_competitors + log_overlap_pmf(params, o) + log_pairwise_error(a - o, channel));
    const double peak = *std::max_element(terms.begin(), terms.end());
    if (peak == -std::numeric_limits<double>::infinity()) return 0.0;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - peak);
    const double log_total = peak + std::log(s);
    return log_total >= 0.0 ? 1.0 : std::exp(log_total);
}

}  // namespace cwc
