// Serial vs parallel timings for the scan kernels. Run with
// LELOSC_THREADS=<n> to pin the worker count; unset, it defaults to the
// hardware concurrency.

#include <cstdlib>
#include <string>
#include <thread>

#include <benchmark/benchmark.h>

#include <lelosc/bode.hpp>
#include <lelosc/lelmodel.hpp>
#include <lelosc/scan.hpp>

using namespace lelosc;

namespace {

void bm_gain_scan(benchmark::State& state, Exec exec) {
    const FeedbackParams p = fast_dvc_params();
    for (auto _ : state) {
        auto rows = gain_scan(p, 0.0, p.gain(), 512, exec);
        benchmark::DoNotOptimize(rows);
    }
}

void bm_sync_scan(benchmark::State& state, Exec exec) {
    const FeedbackParams p = fast_dvc_params();
    const std::vector<double> taus = log_grid(0.001, 0.05, 512);
    for (auto _ : state) {
        auto rows = sync_scan(p, taus, p.gain(), 0.1, exec);
        benchmark::DoNotOptimize(rows);
    }
}

void bm_bode_sweep(benchmark::State& state, Exec exec) {
    const TransferFunction g = build_loop_gain(fast_dvc_params());
    for (auto _ : state) {
        auto pts = bode_sweep(g, 0.1, 1000.0, 400, exec);
        benchmark::DoNotOptimize(pts);
    }
}

} // namespace

BENCHMARK_CAPTURE(bm_gain_scan, serial, Exec::serial);
BENCHMARK_CAPTURE(bm_gain_scan, parallel, Exec::parallel);
BENCHMARK_CAPTURE(bm_sync_scan, serial, Exec::serial);
BENCHMARK_CAPTURE(bm_sync_scan, parallel, Exec::parallel);
BENCHMARK_CAPTURE(bm_bode_sweep, serial, Exec::serial);
BENCHMARK_CAPTURE(bm_bode_sweep, parallel, Exec::parallel);

int main(int argc, char** argv) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    setenv("LELOSC_THREADS", std::to_string(hw).c_str(), 0);
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
