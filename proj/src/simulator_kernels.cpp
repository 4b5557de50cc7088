// Trial loops for run_monte_carlo. Each *_reference function is the plain
// serial loop over the public API and is kept as the oracle for the fused
// OpenMP *_kernel next to it; both must return identical tallies.

#include <algorithm>
#include <cmath>
#include <limits>

#include "cwc/exact_comb.hpp"
#include "cwc/simulator.hpp"

namespace cwc::detail {

namespace {

std::uint64_t chunk_count(std::uint64_t trials)
{
    return (trials + kTrialChunk - 1) / kTrialChunk;
}

TrialTally combine(std::span<const TrialTally> chunks)
{
    TrialTally total;
    for (const auto& c : chunks) {
        total.errors += c.errors;
        total.ties += c.ties;
        total.bound_sum += c.bound_sum;
    }
    return total;
}

template <class ChunkFn>
TrialTally run_chunks_parallel(std::uint64_t trials, ChunkFn&& run_chunk)
{
    const auto chunks = static_cast<std::int64_t>(chunk_count(trials));
    std::vector<TrialTally> tallies(chunks);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::uint64_t begin = static_cast<std::uint64_t>(c) * kTrialChunk;
        tallies[c] = run_chunk(begin, std::min(trials, begin + kTrialChunk));
    }
    return combine(tallies);
}

// Markov bound of the sent word from its overlap histogram, summed in the
// same order as union_bound() so both paths agree to the last bit.
double bound_from_histogram(std::span<const std::uint64_t> histogram, std::span<const double> pairwise, int a)
{
    double total = 0.0;
    for (int o = 0; o <= a; ++o) {
        if (histogram[o] == 0) continue;
        total += static_cast<double>(histogram[o]) * pairwise[a - o];
    }
    return std::min(1.0, total);
}

}  // namespace

TrialTally materialized_reference(const Codebook& book, const ChannelModel& channel, std::uint64_t trials,
                                  std::uint64_t seed)
{
    std::vector<TrialTally> chunks(chunk_count(trials));
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto rng = SplitMix64::stream(seed, StreamTag::trial, t);
        const std::uint64_t sent = rng.below(book.size());
        const Codeword sent_word = book.word(sent);
        const Codeword received = apply_channel(sent_word, channel, rng);
        const Decoded d = decode(received, book);
        const bool sent_is_max = overlap(received, sent_word) == overlap(received.blocks(), book.row(d.index));

        TrialTally& chunk = chunks[t / kTrialChunk];
        if (d.index != sent || d.tie) {
            ++chunk.errors;
            if (sent_is_max) ++chunk.ties;
        }
        chunk.bound_sum += union_bound(empirical_spectrum(book, sent), channel);
    }
    return combine(chunks);
}

TrialTally materialized_kernel(const Codebook& book, const ChannelModel& channel, std::uint64_t trials,
                               std::uint64_t seed)
{
    const int a = book.params().a();
    std::vector<double> pairwise(a + 1);
    for (int u = 0; u <= a; ++u) pairwise[u] = pairwise_error_exact(u, channel);
    const std::uint64_t m = book.size();

    return run_chunks_parallel(trials, [&](std::uint64_t begin, std::uint64_t end) {
        TrialTally tally;
        std::vector<std::uint64_t> histogram(a + 1);
        for (std::uint64_t t = begin; t < end; ++t) {
            auto rng = SplitMix64::stream(seed, StreamTag::trial, t);
            const std::uint64_t sent = rng.below(m);
            const auto sent_row = book.row(sent);
            const Codeword received = apply_channel(Codeword(book.params().n(), sent_row), channel, rng);
            const auto recv = received.blocks();

            std::fill(histogram.begin(), histogram.end(), 0);
            int best_other = -1;
            for (std::uint64_t j = 0; j < m; ++j) {
                if (j == sent) continue;
                const auto row = book.row(j);
                best_other = std::max(best_other, overlap(recv, row));
                ++histogram[overlap(sent_row, row)];
            }
            const int sent_score = overlap(recv, sent_row);
            if (best_other >= sent_score) {
                ++tally.errors;
                if (best_other == sent_score) ++tally.ties;
            }
            tally.bound_sum += bound_from_histogram(histogram, pairwise, a);
        }
        return tally;
    });
}

double ensemble_error_probability(const CodeParams& params, int k, int s, double competitors)
{
    const int n = params.n();
    const int a = params.a();
    if (competitors <= 0.0) return 0.0;
    const int o_lo = std::max({s, 0, a - (n - k)});
    const int o_hi = std::min(k, a);
    if (o_lo > o_hi) return 0.0;
    if (o_lo <= std::max(0, a - (n - k))) return 1.0;  // every competitor reaches s

    // T = Pr[overlap of a random weight-a word with the received word >= s]
    const double log_total = log_binom(n, a);
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    terms.reserve(o_hi - o_lo + 1);
    for (int o = o_lo; o <= o_hi; ++o) {
        terms.push_back(log_binom(k, o) + log_binom(n - k, a - o) - log_total);
        peak = std::max(peak, terms.back());
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - peak);
    const double tail = std::min(1.0, std::exp(peak + std::log(sum)));
    if (tail >= 1.0) return 1.0;
    return -std::expm1(competitors * std::log1p(-tail));
}

namespace {

struct EnsembleOutcome {
    bool error = false;
    bool tie = false;
};

template <class Probability>
EnsembleOutcome ensemble_trial(const CodeParams& params, const ChannelModel& channel, std::uint64_t seed,
                               std::uint64_t t, Probability&& prob)
{
    auto rng = SplitMix64::stream(seed, StreamTag::trial, t);
    const Codeword sent = sample_codeword(params, rng);
    const Codeword received = apply_channel(sent, channel, rng);
    const int k = received.weight();
    const int s = overlap(received, sent);
    const double u = rng.uniform01();
    const double at_least = prob(k, s);      // some competitor scores >= s
    const double strictly = prob(k, s + 1);  // some competitor scores > s
    return {u < at_least, u < at_least && u >= strictly};
}

}  // namespace

TrialTally ensemble_reference(const CodeParams& params, double competitors, const ChannelModel& channel,
                              std::uint64_t trials, std::uint64_t seed)
{
    TrialTally tally;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto outcome = ensemble_trial(params, channel, seed, t, [&](int k, int s) {
            return ensemble_error_probability(params, k, s, competitors);
        });
        tally.errors += outcome.error;
        tally.ties += outcome.tie;
    }
    return tally;
}

TrialTally ensemble_kernel(const CodeParams& params, double competitors, const ChannelModel& channel,
                           std::uint64_t trials, std::uint64_t seed)
{
    const int n = params.n();
    const int a = params.a();
    const auto rows = static_cast<std::int64_t>(n) + 1;
    const int cols = a + 2;
    constexpr std::int64_t kMaxTable = std::int64_t{1} << 22;
    const bool tabulate = rows * cols <= kMaxTable;

    std::vector<double> table;
    if (tabulate) {
        table.resize(rows * cols);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t k = 0; k < rows; ++k)
            for (int s = 0; s < cols; ++s)
                table[k * cols + s] = ensemble_error_probability(params, static_cast<int>(k), s, competitors);
    }
    auto prob = [&](int k, int s) {
        return tabulate ? table[static_cast<std::int64_t>(k) * cols + s]
                        : ensemble_error_probability(params, k, s, competitors);
    };

    return run_chunks_parallel(trials, [&](std::uint64_t begin, std::uint64_t end) {
        TrialTally tally;
        for (std::uint64_t t = begin; t < end; ++t) {
            const auto outcome = ensemble_trial(params, channel, seed, t, prob);
            tally.errors += outcome.error;
            tally.ties += outcome.tie;
        }
        return tally;
    });
}

}  // namespace cwc::detail
