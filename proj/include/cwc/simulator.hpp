#pragma once

// Monte Carlo ground truth: random constant-weight codebooks pushed through
// an asymmetric bit-flip channel and decoded by maximum overlap.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cwc/exponents.hpp"
#include "cwc/parallel.hpp"
#include "cwc/rng.hpp"
#include "cwc/types.hpp"

namespace cwc {

/// Largest codebook that will be materialized in memory.
inline constexpr std::uint64_t kMaxCodebookWords = std::uint64_t{1} << 24;

/// Bit-packed binary word of fixed length.
class Codeword {
public:
    explicit Codeword(int n);
    Codeword(int n, std::span<const std::uint64_t> blocks);
    static Codeword from_support(int n, std::span<const int> ones);

    int size() const { return n_; }
    int weight() const;
    bool test(int i) const { return (blocks_[i >> 6] >> (i & 63)) & 1U; }
    void set(int i, bool value = true);
    void flip(int i) { blocks_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    std::vector<int> support() const;
    std::span<const std::uint64_t> blocks() const { return blocks_; }

    friend bool operator==(const Codeword&, const Codeword&) = default;

private:
    int n_;
    std::vector<std::uint64_t> blocks_;
};

inline int blocks_for(int n) { return (n + 63) / 64; }

/// Number of positions active in both words.
int overlap(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y);
inline int overlap(const Codeword& x, const Codeword& y) { return overlap(x.blocks(), y.blocks()); }

/// Immutable list of weight-a words stored row-major in one buffer.
class Codebook {
public:
    Codebook(const CodeParams& params, std::span<const Codeword> words, std::uint64_t seed = 0);

    /// M independent uniform weight-a words; word i comes from its own RNG
    /// stream. Duplicates are allowed unless `distinct` is set, in which case
    /// repeated words are redrawn (requires M <= C(N, a)).
    static Codebook sample(const CodeParams& params, std::uint64_t m, std::uint64_t seed, bool distinct = false,
                           ExecPolicy policy = ExecPolicy::parallel);

    const CodeParams& params() const { return params_; }
    std::uint64_t size() const { return size_; }
    std::uint64_t seed() const { return seed_; }
    int stride() const { return stride_; }
    std::span<const std::uint64_t> row(std::uint64_t i) const
    {
        return {data_.data() + i * static_cast<std::uint64_t>(stride_), static_cast<std::size_t>(stride_)};
    }
    Codeword word(std::uint64_t i) const;

private:
    Codebook(const CodeParams& params, std::uint64_t m, std::uint64_t seed);

    CodeParams params_;
    std::uint64_t size_;
    int stride_;
    std::vector<std::uint64_t> data_;
    std::uint64_t seed_;
};

/// Uniformly random a-subset of the N positions set to one.
Codeword sample_codeword(const CodeParams& params, SplitMix64& rng);

/// Flips each one with probability p10 and each zero with probability p01.
Codeword apply_channel(const Codeword& word, const ChannelModel& channel, SplitMix64& rng);

struct Decoded {
    std::uint64_t index = 0;
    bool tie = false;
};

/// Index of the codeword with the largest overlap with `received` (lowest
/// index on ties); `tie` flags a maximum shared by two or more words.
Decoded decode(const Codeword& received, const Codebook& book);

/// D[o] over all codewords other than the reference.
OverlapSpectrum empirical_spectrum(const Codebook& book, std::uint64_t reference);

enum class CodebookMode {
    materialized,  // a concrete codebook of M sampled words
    ensemble,      // codebook drawn afresh per trial, competitors integrated exactly
};

std::string to_string(CodebookMode mode);

struct SimulationOptions {
    CodebookMode mode = CodebookMode::materialized;
    bool distinct = false;
    ExecPolicy policy = ExecPolicy::parallel;
    int grid = kDefaultGrid;  // for predicted_log_p
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// 95% Wilson score interval; zero-error runs report [0, 3 / trials].
Interval wilson_interval(std::uint64_t errors, std::uint64_t trials);

struct SimulationReport {
    int n = 0;
    int a = 0;
    std::string words;
    double log_words = 0.0;
    double p10 = 0.0;
    double p01 = 0.0;
    CodebookMode mode = CodebookMode::materialized;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    std::uint64_t tie_errors = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double union_bound = 0.0;
    double predicted_log_p = 0.0;  // N (rho - G); NaN when the channel is outside the analysis range
    std::uint64_t seed = 0;

    double ci_half_width() const { return 0.5 * (ci_high - ci_low); }
    friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

/// Samples a codebook of |W| words (materialized mode, |W| <= 2^24, else
/// MemoryGuardError) or uses the implicit ensemble, then runs `trials`
/// independent send/corrupt/decode rounds. Trial t draws from its own RNG
/// stream, so the report is bit-identical for any thread count.
SimulationReport run_monte_carlo(const CodeParams& params, const WordBudget& budget, const ChannelModel& channel,
                                 std::uint64_t trials, std::uint64_t seed, const SimulationOptions& options = {});

/// Same trial loop over a caller-supplied codebook.
SimulationReport run_monte_carlo(const Codebook& book, const ChannelModel& channel, std::uint64_t trials,
                                 std::uint64_t seed, const SimulationOptions& options = {});

struct SweepRow {
    double ratio = 0.0;
    double rho = 0.0;
    std::string words;
    bool skipped = false;
    std::optional<SimulationReport> report;
};

/// One run per rho / G ratio with |W| = ceil(exp(ratio G N)). Materialized
/// runs whose |W| exceeds the memory guard are skipped and flagged.
std::vector<SweepRow> threshold_sweep(const CodeParams& base, const ChannelModel& channel,
                                      std::span<const double> rho_ratios, std::uint64_t trials, std::uint64_t seed,
                                      const SimulationOptions& options = {});

namespace detail {

struct TrialTally {
    std::uint64_t errors = 0;
    std::uint64_t ties = 0;
    double bound_sum = 0.0;
    friend bool operator==(const TrialTally&, const TrialTally&) = default;
};

inline constexpr std::uint64_t kTrialChunk = 1024;

/// Probability that at least one of `competitors` iid uniform weight-a words
/// overlaps a weight-k received word in >= s units (k in [0, N]).
double ensemble_error_probability(const CodeParams& params, int k, int s, double competitors);

// Trial kernels. The *_reference versions are straightforward per-trial
// loops over the public API; the *_kernel versions are the fused OpenMP
// kernels. Both return identical tallies.
TrialTally materialized_reference(const Codebook& book, const ChannelModel& channel, std::uint64_t trials,
                                  std::uint64_t seed);
TrialTally materialized_kernel(const Codebook& book, const ChannelModel& channel, std::uint64_t trials,
                               std::uint64_t seed);
TrialTally ensemble_reference(const CodeParams& params, double competitors, const ChannelModel& channel,
                              std::uint64_t trials, std::uint64_t seed);
TrialTally ensemble_kernel(const CodeParams& params, double competitors, const ChannelModel& channel,
                           std::uint64_t trials, std::uint64_t seed);

}  // namespace detail

}  // namespace cwc
