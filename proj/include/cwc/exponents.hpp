#pragma once

// Noisy-channel exponents for random constant-weight codes: the pairwise
// exponent I(p10, p01), the reliability exponent G(r) and the threshold
// test rho < G(r).

#include <optional>
#include <span>
#include <vector>

#include "cwc/parallel.hpp"
#include "cwc/types.hpp"

namespace cwc {

inline constexpr int kDefaultGrid = 4096;

struct PairwiseExponent {
    double i_value = 0.0;
    double x_star = 0.0;  // fraction of the u active bits flipped 1->0
    double y_star = 0.0;  // fraction of the u inactive bits flipped 0->1
};

/// min of KL(x, p10) + KL(y, p01) over x, y in [0, 1] with x + y >= 1.
/// For p10, p01 <= 1/2 the minimum lies on x + y = 1, which is where the
/// search runs. Requires both probabilities in (0, 0.5] and grid >= 100.
PairwiseExponent pairwise_exponent(const ChannelModel& channel, int grid = kDefaultGrid);

struct ExponentRow {
    int u = 0;
    double p_exact = 0.0;
    double log_p_exact = 0.0;
    double normalized = 0.0;  // -ln(P) / u
    double i_value = 0.0;
};

/// Exact pairwise error against its exponential approximation for each u.
/// Every u must be >= 1.
std::vector<ExponentRow> exponent_vs_exact(std::span<const int> u_list, const ChannelModel& channel,
                                           int grid = kDefaultGrid);

/// Lowest admissible overlap fraction z for activity ratio r.
double min_overlap_fraction(double r);

/// Per-unit log of the expected distance enumerator at overlap fraction z:
/// rho + r H(z) + (1-r) H((1-z) r / (1-r)) - H(r).
double expected_log_enumerator(double r, double z, double rho);

/// The bracket minimized by G(r), for a given pairwise exponent.
double g_objective(double r, double z, double i_value);

struct GResult {
    double g_value = 0.0;
    double z_star = 1.0;
};

/// G(r) = min over z of g_objective(r, z, I(p10, p01)).
GResult g_of_r(double r, const ChannelModel& channel, int grid = kDefaultGrid,
               ExecPolicy policy = ExecPolicy::parallel);

/// Same, with I supplied by the caller (avoids recomputing it per r).
GResult g_of_r(double r, double i_value, int grid = kDefaultGrid, ExecPolicy policy = ExecPolicy::parallel);

struct ExponentReport {
    double i_value = 0.0;
    double x_star = 0.0;
    double y_star = 0.0;
    std::optional<double> r;
    std::optional<double> g_value;
    std::optional<double> z_star;
};

ExponentReport exponent_report(const ChannelModel& channel, std::optional<double> r, int grid = kDefaultGrid);

enum class Verdict { below, above };

struct ThresholdVerdict {
    Verdict verdict = Verdict::above;
    double rho = 0.0;
    double g_value = 0.0;
    double margin = 0.0;           // g - rho
    double predicted_log_p = 0.0;  // N (rho - g)
};

/// rho < G(a/N) is "below" (error-free regime); equality counts as above.
ThresholdVerdict threshold_check(const CodeParams& params, const WordBudget& budget, const ChannelModel& channel,
                                 int grid = kDefaultGrid);

/// Markov bound min(1, sum_o D[o] Pr[confuse | u = a - o]) with the exact
/// pairwise probability.
double union_bound(const OverlapSpectrum& spectrum, const ChannelModel& channel);

/// Markov bound over the random-code ensemble: the spectrum is replaced by
/// its expectation (M - 1) Pr[overlap = o].
double expected_union_bound(const CodeParams& params, const WordBudget& budget, const ChannelModel& channel);

}  // namespace cwc
