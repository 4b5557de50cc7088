#include "cwc/types.hpp"

#include <cmath>
#include <numbers>

namespace cwc {

// GCC 11 reports a bogus overflow inside boost's cpp_int right shift.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wstringop-overflow"
#pragma GCC diagnostic ignored "-Wstringop-overread"
double log_big(const BigInt& x)
{
    if (x < 0) throw std::domain_error("log_big: negative argument");
    if (x == 0) return -std::numeric_limits<double>::infinity();
    const auto bits = static_cast<long>(boost::multiprecision::msb(x));
    if (bits < 1000) return std::log(static_cast<double>(x));
    const long shift = bits - 62;
    const BigInt head = x >> shift;
    return std::log(static_cast<double>(head)) + static_cast<double>(shift) * std::numbers::ln2;
}
#pragma GCC diagnostic pop

CodeParams::CodeParams(int n, int a) : n_(n), a_(a)
{
    if (n < 1) throw std::invalid_argument("CodeParams: N must be >= 1");
    if (a < 0 || a > n) throw std::invalid_argument("CodeParams: need 0 <= a <= N");
}

WordBudget::WordBudget(BigInt count) : count_(std::move(count))
{
    if (count_ < 1) throw std::invalid_argument("WordBudget: count must be >= 1");
    log_count_ = log_big(count_);
}

WordBudget WordBudget::from_log(double log_count)
{
    if (!(log_count >= 0.0) || !std::isfinite(log_count))
        throw std::invalid_argument("WordBudget::from_log: log count must be finite and >= 0");
    if (log_count < 700.0) {
        const double v = std::exp(log_count);
        const double nearest = std::round(v);
        // exp(ln 125) lands a hair above 125; snap such values instead of rounding up
        const double c = std::abs(v - nearest) <= 1e-9 * std::max(1.0, v) ? nearest : std::ceil(v);
        return WordBudget(BigInt(c));
    }
    const auto shift = static_cast<long>(std::floor(log_count / std::numbers::ln2)) - 60;
    const double mantissa = std::exp(log_count - static_cast<double>(shift) * std::numbers::ln2);
    BigInt count(std::ceil(mantissa));
    count <<= shift;
    return WordBudget(count);
}

std::optional<std::uint64_t> WordBudget::to_u64() const
{
    if (count_ > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return static_cast<std::uint64_t>(count_);
}

ChannelModel::ChannelModel(double p10, double p01) : p10_(p10), p01_(p01)
{
    if (!(p10 >= 0.0 && p10 <= 1.0) || !(p01 >= 0.0 && p01 <= 1.0))
        throw std::invalid_argument("ChannelModel: flip probabilities must lie in [0, 1]");
}

void ChannelModel::require_analyzable() const
{
    if (!analyzable())
        throw std::domain_error("channel outside the analysis range: need 0 < p10, p01 <= 0.5");
}

OverlapSpectrum::OverlapSpectrum(const CodeParams& p, std::vector<std::uint64_t> c) : params(p), counts(std::move(c))
{
    if (counts.size() != static_cast<std::size_t>(p.a() + 1))
        throw std::invalid_argument("OverlapSpectrum: need one count per overlap 0..a");
    for (int o = 0; o < min_overlap(); ++o)
        if (counts[o] != 0) throw std::invalid_argument("OverlapSpectrum: count outside the hypergeometric support");
}

std::uint64_t OverlapSpectrum::total() const
{
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
}

std::string to_string(DesignMode mode)
{
    return mode == DesignMode::noiseless ? "noiseless" : "noisy";
}

}  // namespace cwc
