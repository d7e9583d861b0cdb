// Serial reference against the OpenMP kernels.
//
//   bench_build --benchmark_filter=Build

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "gridups/complex.hpp"
#include "gridups/dataset.hpp"
#include "gridups/tmod.hpp"
#include "gridups/upsilon.hpp"

using namespace gridups;

namespace {

// Indexed by benchmark argument.
const std::vector<std::string> kEntries{"3_1", "4_1", "5_2", "6_3"};

const Dataset& dataset() {
    static const Dataset ds = load_dataset(default_data_dir(), false);
    return ds;
}

const GridDiagram& grid(const benchmark::State& state) {
    return dataset().at(kEntries[static_cast<std::size_t>(state.range(0))]).grid;
}

void label(benchmark::State& state, const GridDiagram& g) {
    state.SetLabel(kEntries[static_cast<std::size_t>(state.range(0))] + " n=" + std::to_string(g.size()));
}

void BM_BuildSerial(benchmark::State& state) {
    const auto& g = grid(state);
    for (auto _ : state) benchmark::DoNotOptimize(build_quotient_complex_serial(g));
    label(state, g);
}

void BM_BuildParallel(benchmark::State& state) {
    const auto& g = grid(state);
    for (auto _ : state) benchmark::DoNotOptimize(build_quotient_complex(g));
    label(state, g);
}

std::vector<Rational> sample_ts() {
    std::vector<Rational> ts;
    for (int p = 0; p <= 16; ++p) ts.emplace_back(p, 16);
    return ts;
}

void BM_UpsilonSerial(benchmark::State& state) {
    const auto& g = grid(state);
    const auto c = reduce(build_quotient_complex(g));
    const auto ts = sample_ts();
    for (auto _ : state)
        for (const auto& t : ts) benchmark::DoNotOptimize(upsilon_at(c, t));
    label(state, g);
}

void BM_UpsilonParallel(benchmark::State& state) {
    const auto& g = grid(state);
    const auto c = reduce(build_quotient_complex(g));
    const auto ts = sample_ts();
    for (auto _ : state) benchmark::DoNotOptimize(upsilon_values(c, ts));
    label(state, g);
}

} // namespace

BENCHMARK(BM_BuildSerial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildParallel)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UpsilonSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UpsilonParallel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
