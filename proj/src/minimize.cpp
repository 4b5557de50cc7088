#include "cwc/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cwc {

std::vector<double> uniform_grid(double lo, double hi, int points)
{
    if (points < 2 || !(lo < hi)) throw std::invalid_argument("uniform_grid: need points >= 2 and lo < hi");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
    g.back() = hi;
    return g;
}

std::vector<double> logit_grid(double lo, double hi, int points)
{
    if (!(lo > 0.0 && hi < 1.0)) throw std::invalid_argument("logit_grid: need 0 < lo < hi < 1");
    const double l0 = std::log(lo / (1.0 - lo));
    const double l1 = std::log(hi / (1.0 - hi));
    auto g = uniform_grid(l0, l1, points);
    for (double& x : g) x = 1.0 / (1.0 + std::exp(-x));
    g.front() = lo;
    g.back() = hi;
    return g;
}

Minimum golden_section(const std::function<double(double)>& f, double lo, double hi, double tol)
{
    constexpr double inv_phi = 0.6180339887498949;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > tol) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

Minimum grid_minimize(const std::function<double(double)>& f, std::span<const double> grid, int cells, double tol,
                      ExecPolicy policy)
{
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    if (n < 2) throw std::invalid_argument("grid_minimize: need at least two grid nodes");
    std::vector<double> values(grid.size());
    if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) values[i] = f(grid[i]);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) values[i] = f(grid[i]);
    }

    // stable order: equal values keep ascending x
    std::vector<std::ptrdiff_t> order(grid.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
        const bool ni = std::isnan(values[i]);
        const bool nj = std::isnan(values[j]);
        if (ni != nj) return nj;
        return values[i] < values[j];
    });

    Minimum best{grid[order[0]], values[order[0]]};
    const int refine = std::min<std::ptrdiff_t>(std::max(cells, 0), n);
    for (int c = 0; c < refine; ++c) {
        const auto k = order[c];
        const double lo = grid[std::max<std::ptrdiff_t>(k - 1, 0)];
        const double hi = grid[std::min(k + 1, n - 1)];
        const Minimum m = golden_section(f, lo, hi, tol);
        if (m.value < best.value || (m.value == best.value && m.x < best.x)) best = m;
    }
    return best;
}

}  // namespace cwc
