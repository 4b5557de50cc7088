#pragma once

// Cost-minimal code design: continuous relaxation followed by an exact
// integer repair around the continuous optimum.

#include <optional>
#include <vector>

#include "cwc/cost.hpp"
#include "cwc/exponents.hpp"
#include "cwc/types.hpp"

namespace cwc {

struct DesignOptions {
    int r_grid = 1024;
    int refine_cells = 3;
    double r_lo = 1e-4;
    double r_hi = 1.0 - 1e-4;
    int repair_factor = 2;  // window is [floor(N*), repair_factor * ceil(N*)], doubled once on failure
    int g_grid = 1024;      // grid for G(r) in noisy mode
    double safety_factor = 1.0;
};

DesignSolution design_noiseless(const WordBudget& budget, const CostModel& cost, const DesignOptions& options = {});

/// Noisy design: H(r) is replaced by G(r). The integer point must satisfy
/// safety * ln|W| / N < G(a / N) strictly and C(N, a) >= |W|.
DesignSolution design_noisy(const WordBudget& budget, const CostModel& cost, const ChannelModel& channel,
                            const DesignOptions& options = {});

struct CurveRow {
    double r = 0.0;
    double n_required = 0.0;
    double cost = 0.0;
};

/// Feasibility frontier N_required(r) = ln|W| / H(r) (or / G(r)) at
/// r = i / (samples - 1), i = 0..samples-1. Endpoints give +inf.
std::vector<CurveRow> constraint_curve(const WordBudget& budget, DesignMode mode,
                                       const std::optional<ChannelModel>& channel, int samples,
                                       const CostModel& cost = CostModel::linear(1.0, 1.0),
                                       int g_grid = kDefaultGrid);

}  // namespace cwc
