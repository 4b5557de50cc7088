// Serial reference vs OpenMP kernel timings for the hot loops.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <omp.h>

#include "cwc/exponents.hpp"
#include "cwc/minimize.hpp"
#include "cwc/simulator.hpp"

using namespace cwc;

namespace {

double seconds(const std::function<void()>& fn, int reps)
{
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, bool same)
{
    std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
                same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cwc_bench: serial vs parallel kernels"};
    std::uint64_t trials = 20000;
    int threads = 0;
    int reps = 3;
    app.add_option("--trials", trials)->capture_default_str();
    app.add_option("--threads", threads, "OpenMP threads (0 = default)");
    app.add_option("--reps", reps, "best of this many runs")->capture_default_str();
    CLI11_PARSE(app, argc, argv);
    set_threads(threads);

    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

    {
        const CodeParams params(128, 40);
        const ChannelModel ch(0.1, 0.05);
        const auto book = Codebook::sample(params, 1024, 1);
        detail::TrialTally s, p;
        const double ts = seconds([&] { s = detail::materialized_reference(book, ch, trials / 10, 2); }, reps);
        const double tp = seconds([&] { p = detail::materialized_kernel(book, ch, trials / 10, 2); }, reps);
        row("materialized N=128 M=1024", ts, tp, s == p);
    }
    {
        const CodeParams params(200, 100);
        const ChannelModel ch(0.05, 0.05);
        detail::TrialTally s, p;
        const double ts = seconds([&] { s = detail::ensemble_reference(params, 1e25, ch, trials, 3); }, reps);
        const double tp = seconds([&] { p = detail::ensemble_kernel(params, 1e25, ch, trials, 3); }, reps);
        row("ensemble N=200 a=100", ts, tp, s == p);
    }
    {
        const CodeParams params(256, 64);
        Codebook s = Codebook::sample(params, 1, 0), p = s;
        const double ts = seconds([&] { s = Codebook::sample(params, 1 << 16, 4, false, ExecPolicy::serial); }, reps);
        const double tp = seconds([&] { p = Codebook::sample(params, 1 << 16, 4, false, ExecPolicy::parallel); }, reps);
        row("codebook sample M=65536", ts, tp, s.word(12345) == p.word(12345));
    }
    {
        const double i_value = pairwise_exponent(ChannelModel(0.05, 0.05)).i_value;
        GResult s, p;
        const double ts = seconds([&] { s = g_of_r(0.3, i_value, 1 << 18, ExecPolicy::serial); }, reps);
        const double tp = seconds([&] { p = g_of_r(0.3, i_value, 1 << 18, ExecPolicy::parallel); }, reps);
        row("G(r) grid 2^18", ts, tp, s.g_value == p.g_value && s.z_star == p.z_star);
    }
    return 0;
}
