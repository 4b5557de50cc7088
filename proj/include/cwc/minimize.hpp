#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cwc/parallel.hpp"

namespace cwc {

struct Minimum {
    double x = 0.0;
    double value = 0.0;
};

/// Uniform grid of `points` nodes on [lo, hi] (both ends included).
std::vector<double> uniform_grid(double lo, double hi, int points);

/// Grid of `points` nodes uniform in logit(x) between lo and hi, 0 < lo < hi < 1.
std::vector<double> logit_grid(double lo, double hi, int points);

/// Golden-section search for a minimum of f on [lo, hi].
Minimum golden_section(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-9);

/// Evaluates f on every grid node, then refines the `cells` best nodes by
/// golden-section over their neighbouring cells. Ties between equal values
/// resolve to the smallest x. The grid scan runs as an OpenMP kernel under
/// ExecPolicy::parallel; both policies return identical results.
Minimum grid_minimize(const std::function<double(double)>& f, std::span<const double> grid, int cells = 1,
                      double tol = 1e-9, ExecPolicy policy = ExecPolicy::parallel);

}  // namespace cwc
