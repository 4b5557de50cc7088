#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cwc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MemoryGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Natural log of a nonnegative big integer. Exact up to double rounding,
/// including values far beyond the double range.
double log_big(const BigInt& x);

/// Code geometry: N units of which exactly a are active.
class CodeParams {
public:
    CodeParams(int n, int a);

    int n() const { return n_; }
    int a() const { return a_; }
    double ratio() const { return static_cast<double>(a_) / n_; }
    Rational exact_ratio() const { return Rational(a_, n_); }

    friend bool operator==(const CodeParams&, const CodeParams&) = default;

private:
    int n_;
    int a_;
};

/// Number of distinct symbols |W| the code has to carry.
class WordBudget {
public:
    explicit WordBudget(BigInt count);
    explicit WordBudget(std::uint64_t count) : WordBudget(BigInt(count)) {}

    /// Smallest budget with ln|W| >= log_count, i.e. ceil(exp(log_count)).
    static WordBudget from_log(double log_count);

    const BigInt& count() const { return count_; }
    double log_count() const { return log_count_; }
    /// Rate rho = ln|W| / N.
    double rho(const CodeParams& params) const { return log_count_ / params.n(); }
    std::optional<std::uint64_t> to_u64() const;
    std::string to_string() const { return count_.str(); }

private:
    BigInt count_;
    double log_count_;
};

/// Asymmetric bit-flip channel. p10 flips active units off, p01 flips
/// inactive units on. Any value in [0, 1] is accepted here; the analytic
/// operations narrow this to (0, 0.5] themselves.
class ChannelModel {
public:
    ChannelModel(double p10, double p01);

    double p10() const { return p10_; }
    double p01() const { return p01_; }
    double q10() const { return 1.0 - p10_; }
    double q01() const { return 1.0 - p01_; }

    bool analyzable() const { return p10_ > 0.0 && p10_ <= 0.5 && p01_ > 0.0 && p01_ <= 0.5; }
    /// Throws std::domain_error unless analyzable().
    void require_analyzable() const;

private:
    double p10_;
    double p01_;
};

/// Distance enumerator D[o]: how many codewords overlap a reference word in
/// exactly o active units. counts[o] for o in [0, a]; entries below
/// max(0, 2a - N) must be zero.
struct OverlapSpectrum {
    CodeParams params;
    std::vector<std::uint64_t> counts;

    explicit OverlapSpectrum(const CodeParams& p) : params(p), counts(p.a() + 1, 0) {}
    OverlapSpectrum(const CodeParams& p, std::vector<std::uint64_t> c);

    int min_overlap() const { return std::max(0, 2 * params.a() - params.n()); }
    std::uint64_t total() const;
};

enum class DesignMode { noiseless, noisy };

std::string to_string(DesignMode mode);

struct DesignSolution {
    DesignMode mode = DesignMode::noiseless;
    double r_star = 0.0;
    double n_continuous = 0.0;
    double continuous_cost = 0.0;
    int a_int = 0;
    int n_int = 0;
    double cost = 0.0;
    double constraint_value = 0.0;  // H(r*) or G(r*)
    bool feasible = false;
};

}  // namespace cwc
