#include "btoric/kernels.hpp"
#include "btoric/surface_lab.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace btoric;

namespace {

double cell(std::size_t i, std::size_t j) {
    double x = -1.0 + (i + 0.5) / 512.0, y = (j + 0.5) / 512.0;
    return std::abs(std::log(std::abs(x)) * std::sin(6.28 * y) - 0.5 * x * y);
}

double node(std::size_t i) { return std::exp(-1e-4 * i) * std::cos(1e-2 * i); }

void grid_serial(benchmark::State& s) {
    const auto n = static_cast<std::size_t>(s.range(0));
    for (auto _ : s) benchmark::DoNotOptimize(kernels::serial::max_over_grid(n, n, cell));
    s.SetItemsProcessed(s.iterations() * n * n);
}

void grid_omp(benchmark::State& s) {
    const auto n = static_cast<std::size_t>(s.range(0));
    for (auto _ : s) benchmark::DoNotOptimize(kernels::omp::max_over_grid(n, n, cell));
    s.SetItemsProcessed(s.iterations() * n * n);
}

void map_serial(benchmark::State& s) {
    const auto n = static_cast<std::size_t>(s.range(0));
    for (auto _ : s) benchmark::DoNotOptimize(kernels::serial::map_indices(n, node));
    s.SetItemsProcessed(s.iterations() * n);
}

void map_omp(benchmark::State& s) {
    const auto n = static_cast<std::size_t>(s.range(0));
    for (auto _ : s) benchmark::DoNotOptimize(kernels::omp::map_indices(n, node));
    s.SetItemsProcessed(s.iterations() * n);
}

void volume(benchmark::State& s, bool parallel) {
    auto cfg = surface::QuadratureConfig::defaults();
    cfg.parallel = parallel;
    auto m = surface::torus_sine_model(1.0);
    for (auto _ : s) benchmark::DoNotOptimize(surface::liouville_volume(m, cfg).value);
}

void moment(benchmark::State& s, bool parallel) {
    surface::ProductModel pm{{surface::sphere_log_model(1.0)}};
    surface::MomentComponent mu{{-1.0}, {{surface::MomentTerm::Kind::LogAbs, 0, 1.0, 0.0}}};
    const auto density = static_cast<std::size_t>(s.range(0));
    for (auto _ : s) benchmark::DoNotOptimize(surface::verify_moment_map(pm, {mu}, density, 1e-3, parallel).max_residual);
}

}  // namespace

BENCHMARK(grid_serial)->Arg(256)->Arg(1024);
BENCHMARK(grid_omp)->Arg(256)->Arg(1024);
BENCHMARK(map_serial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(map_omp)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK_CAPTURE(volume, serial, false);
BENCHMARK_CAPTURE(volume, omp, true);
BENCHMARK_CAPTURE(moment, serial, false)->Arg(100)->Arg(400);
BENCHMARK_CAPTURE(moment, omp, true)->Arg(100)->Arg(400);

BENCHMARK_MAIN();
