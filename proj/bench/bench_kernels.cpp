// Serial reference vs OpenMP kernels on the two hot loops: evaluating a model
// over a frequency grid and scanning phase time over barrier widths.

#include "hartmankit/barriers.hpp"
#include "hartmankit/phasetime.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace hartmankit;
using namespace hartmankit::barriers;

namespace {

constexpr double kPi = std::numbers::pi;

const BarrierModel& mirror() {
    static const BarrierModel m = quarter_wave_stack(2.3, 1.45, 40, 1e14);
    return m;
}

FrequencyGrid band(std::size_t n) {
    return FrequencyGrid::linspace(2 * kPi * 0.5e14, 2 * kPi * 1.5e14, n);
}

std::vector<double> widths(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.2e-9 + 0.02e-9 * static_cast<double>(i);
    return w;
}

void BM_EvaluateSerial(benchmark::State& state) {
    const auto grid = band(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::evaluate(mirror(), grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluateParallel(benchmark::State& state) {
    const auto grid = band(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate(mirror(), grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

const RectangularQuantumBarrier kBarrier{10 * units::eV, 1e-9};
const double kOmega = 5 * units::eV / units::hbar;

void BM_HartmanSerial(benchmark::State& state) {
    const auto w = widths(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(phasetime::serial::hartman_scan(kBarrier, w, kOmega));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HartmanParallel(benchmark::State& state) {
    const auto w = widths(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(phasetime::hartman_scan(kBarrier, w, kOmega));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_EvaluateSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EvaluateParallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HartmanSerial)->RangeMultiplier(8)->Range(64, 4096)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HartmanParallel)->RangeMultiplier(8)->Range(64, 4096)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
