#pragma once

#include <cstdint>

namespace cwc {

/// Stream tags; each (seed, tag, index) triple owns an independent stream so
/// results never depend on how work is split across threads.
enum class StreamTag : std::uint64_t { codebook = 1, trial = 2, sweep = 3, cost_check = 4 };

/// SplitMix64 generator (Steele, Lea, Flood 2014). Satisfies
/// UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static SplitMix64 stream(std::uint64_t seed, StreamTag tag, std::uint64_t index)
    {
        std::uint64_t key = mix(seed ^ mix(static_cast<std::uint64_t>(tag) * 0xd1342543de82ef95ULL));
        return SplitMix64(mix(key ^ mix(index + 0x632be59bd9b4e019ULL)));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0 (Lemire's multiply-shift with rejection).
    std::uint64_t below(std::uint64_t n)
    {
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace cwc
