#include "cwc/cost.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cwc/rng.hpp"

namespace cwc {

namespace {

constexpr int kMonotoneChecks = 256;
constexpr double kCheckRange = 1024.0;

void require_monotone(const CostModel::Function& fn)
{
    auto rng = SplitMix64::stream(0, StreamTag::cost_check, 0);
    for (int i = 0; i < kMonotoneChecks; ++i) {
        const double a = rng.uniform01() * kCheckRange;
        const double n = a + rng.uniform01() * kCheckRange;
        const double a2 = a + rng.uniform01() * kCheckRange;
        const double n2 = std::max(n, a2) + rng.uniform01() * kCheckRange;
        const double lo = fn(a, n);
        const double hi = fn(a2, n2);
        if (std::isnan(lo) || std::isnan(hi) || lo > hi + 1e-12 * std::abs(hi))
            throw std::invalid_argument("CostModel: cost is not monotone nondecreasing in (a, N)");
    }
}

}  // namespace

CostModel::CostModel(Function fn, std::string name) : fn_(std::move(fn)), name_(std::move(name))
{
    if (!fn_) throw std::invalid_argument("CostModel: empty cost function");
    require_monotone(fn_);
}

CostModel CostModel::linear(double cost_active, double cost_unit)
{
    if (!(cost_active >= 0.0) || !(cost_unit >= 0.0))
        throw std::invalid_argument("CostModel::linear: coefficients must be >= 0");
    std::ostringstream name;
    name << "linear(" << cost_active << ", " << cost_unit << ")";
    return CostModel([cost_active, cost_unit](double a, double n) { return cost_active * a + cost_unit * n; },
                     name.str());
}

}  // namespace cwc
