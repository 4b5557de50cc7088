#pragma once

#include <functional>
#include <string>

namespace cwc {

/// Cost C(a, N) of a code with a active units out of N. Must be monotone
/// nondecreasing in both arguments; the constructor spot-checks this on
/// random pairs and rejects models that fail.
class CostModel {
public:
    using Function = std::function<double(double a, double n)>;

    CostModel(Function fn, std::string name);

    /// c_a * a + c_N * N, the built-in model.
    static CostModel linear(double cost_active, double cost_unit);

    double evaluate(double a, double n) const { return fn_(a, n); }
    double operator()(double a, double n) const { return fn_(a, n); }
    const std::string& name() const { return name_; }

private:
    Function fn_;
    std::string name_;
};

}  // namespace cwc
