#include "cwc/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string_view>
#include <unordered_set>

#include "cwc/exact_comb.hpp"

namespace cwc {

Codeword::Codeword(int n) : n_(n), blocks_(blocks_for(n), 0)
{
    if (n < 1) throw std::invalid_argument("Codeword: length must be >= 1");
}

Codeword::Codeword(int n, std::span<const std::uint64_t> blocks) : Codeword(n)
{
    if (blocks.size() != blocks_.size()) throw std::invalid_argument("Codeword: block count does not match length");
    std::copy(blocks.begin(), blocks.end(), blocks_.begin());
}

Codeword Codeword::from_support(int n, std::span<const int> ones)
{
    Codeword w(n);
    for (int i : ones) {
        if (i < 0 || i >= n) throw std::out_of_range("Codeword::from_support: index outside the word");
        w.set(i);
    }
    return w;
}

int Codeword::weight() const
{
    int w = 0;
    for (auto b : blocks_) w += std::popcount(b);
    return w;
}

void Codeword::set(int i, bool value)
{
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
        blocks_[i >> 6] |= mask;
    else
        blocks_[i >> 6] &= ~mask;
}

std::vector<int> Codeword::support() const
{
    std::vector<int> ones;
    for (int i = 0; i < n_; ++i)
        if (test(i)) ones.push_back(i);
    return ones;
}

int overlap(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y)
{
    int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::popcount(x[i] & y[i]);
    return s;
}

Codebook::Codebook(const CodeParams& params, std::uint64_t m, std::uint64_t seed)
    : params_(params), size_(m), stride_(blocks_for(params.n())), seed_(seed)
{
    if (m > kMaxCodebookWords) throw MemoryGuardError("codebook of " + std::to_string(m) + " words exceeds the 2^24 guard");
    data_.assign(m * static_cast<std::uint64_t>(stride_), 0);
}

Codebook::Codebook(const CodeParams& params, std::span<const Codeword> words, std::uint64_t seed)
    : Codebook(params, words.size(), seed)
{
    if (words.empty()) throw std::invalid_argument("Codebook: needs at least one word");
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].size() != params.n() || words[i].weight() != params.a())
            throw std::invalid_argument("Codebook: every word must have length N and weight a");
        std::copy(words[i].blocks().begin(), words[i].blocks().end(), data_.begin() + i * stride_);
    }
}

Codebook Codebook::sample(const CodeParams& params, std::uint64_t m, std::uint64_t seed, bool distinct,
                          ExecPolicy policy)
{
    if (m < 1) throw std::invalid_argument("Codebook::sample: needs at least one word");
    Codebook book(params, m, seed);
    auto store = [&book](std::uint64_t i, const Codeword& w) {
        std::copy(w.blocks().begin(), w.blocks().end(), book.data_.begin() + i * book.stride_);
    };

    if (!distinct) {
        const auto count = static_cast<std::int64_t>(m);
        if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < count; ++i) {
                auto rng = SplitMix64::stream(seed, StreamTag::codebook, i);
                store(i, sample_codeword(params, rng));
            }
        } else {
            for (std::int64_t i = 0; i < count; ++i) {
                auto rng = SplitMix64::stream(seed, StreamTag::codebook, i);
                store(i, sample_codeword(params, rng));
            }
        }
        return book;
    }

    if (binom_exact(params.n(), params.a()) < m)
        throw std::invalid_argument("Codebook::sample: more distinct words requested than C(N, a)");
    // Redraws depend on earlier words, so this path is sequential.
    std::unordered_set<std::string> seen;
    seen.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        auto rng = SplitMix64::stream(seed, StreamTag::codebook, i);
        for (;;) {
            Codeword w = sample_codeword(params, rng);
            const auto bytes = std::as_bytes(w.blocks());
            std::string key(reinterpret_cast<const char*>(bytes.data()), bytes.size());
            if (seen.insert(std::move(key)).second) {
                store(i, w);
                break;
            }
        }
    }
    return book;
}

Codeword Codebook::word(std::uint64_t i) const
{
    if (i >= size_) throw std::out_of_range("Codebook::word: index out of range");
    return Codeword(params_.n(), row(i));
}

Codeword sample_codeword(const CodeParams& params, SplitMix64& rng)
{
    const int n = params.n();
    std::vector<int> index(n);
    std::iota(index.begin(), index.end(), 0);
    Codeword w(n);
    for (int i = 0; i < params.a(); ++i) {
        const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(index[i], index[j]);
        w.set(index[i]);
    }
    return w;
}

Codeword apply_channel(const Codeword& word, const ChannelModel& channel, SplitMix64& rng)
{
    Codeword out = word;
    for (int i = 0; i < word.size(); ++i) {
        const double p = word.test(i) ? channel.p10() : channel.p01();
        if (rng.bernoulli(p)) out.flip(i);
    }
    return out;
}

Decoded decode(const Codeword& received, const Codebook& book)
{
    if (book.size() == 0) throw std::invalid_argument("decode: empty codebook");
    if (received.size() != book.params().n()) throw std::invalid_argument("decode: word length mismatch");
    Decoded best;
    int best_score = -1;
    for (std::uint64_t j = 0; j < book.size(); ++j) {
        const int score = overlap(received.blocks(), book.row(j));
        if (score > best_score) {
            best_score = score;
            best = {j, false};
        } else if (score == best_score) {
            best.tie = true;
        }
    }
    return best;
}

OverlapSpectrum empirical_spectrum(const Codebook& book, std::uint64_t reference)
{
    if (reference >= book.size()) throw std::out_of_range("empirical_spectrum: reference index out of range");
    OverlapSpectrum spectrum(book.params());
    const auto ref = book.row(reference);
    for (std::uint64_t j = 0; j < book.size(); ++j)
        if (j != reference) ++spectrum.counts[overlap(ref, book.row(j))];
    return spectrum;
}

std::string to_string(CodebookMode mode)
{
    return mode == CodebookMode::materialized ? "materialized" : "ensemble";
}

Interval wilson_interval(std::uint64_t errors, std::uint64_t trials)
{
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (errors > trials) throw std::invalid_argument("wilson_interval: errors exceed trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    if (errors == 0) return {0.0, std::min(1.0, 3.0 / n)};
    constexpr double z = 1.959963984540054;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::min(p, std::max(0.0, center - half)), std::max(p, std::min(1.0, center + half))};
}

namespace {

double predicted_log_p(const CodeParams& params, const WordBudget& budget, const ChannelModel& channel, int grid)
{
    if (!channel.analyzable() || params.a() == 0 || params.a() == params.n())
        return std::numeric_limits<double>::quiet_NaN();
    return threshold_check(params, budget, channel, grid).predicted_log_p;
}

SimulationReport make_report(const CodeParams& params, const WordBudget& budget, const ChannelModel& channel,
                             CodebookMode mode, std::uint64_t trials, std::uint64_t seed,
                             const detail::TrialTally& tally)
{
    SimulationReport r;
    r.n = params.n();
    r.a = params.a();
    r.words = budget.to_string();
    r.log_words = budget.log_count();
    r.p10 = channel.p10();
    r.p01 = channel.p01();
    r.mode = mode;
    r.trials = trials;
    r.errors = tally.errors;
    r.tie_errors = tally.ties;
    r.p_hat = static_cast<double>(tally.errors) / static_cast<double>(trials);
    const Interval ci = wilson_interval(tally.errors, trials);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.seed = seed;
    return r;
}

}  // namespace

SimulationReport run_monte_carlo(const Codebook& book, const ChannelModel& channel, std::uint64_t trials,
                                 std::uint64_t seed, const SimulationOptions& options)
{
    if (trials < 1) throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
    const auto tally = options.policy == ExecPolicy::parallel
                           ? detail::materialized_kernel(book, channel, trials, seed)
                           : detail::materialized_reference(book, channel, trials, seed);
    const WordBudget budget(book.size());
    SimulationReport r = make_report(book.params(), budget, channel, CodebookMode::materialized, trials, seed, tally);
    r.union_bound = tally.bound_sum / static_cast<double>(trials);
    r.predicted_log_p = predicted_log_p(book.params(), budget, channel, options.grid);
    return r;
}

SimulationReport run_monte_carlo(const CodeParams& params, const WordBudget& budget, const ChannelModel& channel,
                                 std::uint64_t trials, std::uint64_t seed, const SimulationOptions& options)
{
    if (trials < 1) throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
    if (options.mode == CodebookMode::materialized) {
        const auto m = budget.to_u64();
        if (!m || *m > kMaxCodebookWords)
            throw MemoryGuardError("run_monte_carlo: |W| = " + budget.to_string() +
                                   " exceeds the 2^24 materialized-codebook guard; use ensemble mode");
        const Codebook book = Codebook::sample(params, *m, seed, options.distinct, options.policy);
        return run_monte_carlo(book, channel, trials, seed, options);
    }

    if (options.distinct) throw std::invalid_argument("run_monte_carlo: --distinct needs a materialized codebook");
    const double competitors = static_cast<double>(BigInt(budget.count() - 1));
    const auto tally = options.policy == ExecPolicy::parallel
                           ? detail::ensemble_kernel(params, competitors, channel, trials, seed)
                           : detail::ensemble_reference(params, competitors, channel, trials, seed);
    SimulationReport r = make_report(params, budget, channel, CodebookMode::ensemble, trials, seed, tally);
    r.union_bound = expected_union_bound(params, budget, channel);
    r.predicted_log_p = predicted_log_p(params, budget, channel, options.grid);
    return r;
}

std::vector<SweepRow> threshold_sweep(const CodeParams& base, const ChannelModel& channel,
                                      std::span<const double> rho_ratios, std::uint64_t trials, std::uint64_t seed,
                                      const SimulationOptions& options)
{
    channel.require_analyzable();
    if (base.a() == 0 || base.a() == base.n()) throw std::domain_error("threshold_sweep: need 0 < a < N");
    const double g = g_of_r(base.ratio(), channel, options.grid).g_value;

    std::vector<SweepRow> rows;
    rows.reserve(rho_ratios.size());
    for (std::size_t i = 0; i < rho_ratios.size(); ++i) {
        const double ratio = rho_ratios[i];
        if (!(ratio > 0.0 && ratio <= 2.0)) throw std::invalid_argument("threshold_sweep: ratios must lie in (0, 2]");
        const WordBudget budget = WordBudget::from_log(ratio * g * base.n());
        SweepRow row;
        row.ratio = ratio;
        row.rho = budget.rho(base);
        row.words = budget.to_string();
        const auto m = budget.to_u64();
        if (options.mode == CodebookMode::materialized && (!m || *m > kMaxCodebookWords)) {
            row.skipped = true;
        } else {
            const std::uint64_t run_seed = SplitMix64::stream(seed, StreamTag::sweep, i)();
            row.report = run_monte_carlo(base, budget, channel, trials, run_seed, options);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace cwc
