#include <benchmark/benchmark.h>

#include <random>

#include "xsb/knapp.hpp"
#include "xsb/propagator.hpp"
#include "xsb/quadrature.hpp"
#include "xsb/spectral.hpp"
#include "xsb/trilinear.hpp"

using namespace xsb;

static void BM_fft3(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SpectralField f = random_spectrum(Grid3({4.0, 4.0, 4.0}, {n, n, n}), 1);
  for (auto _ : state) benchmark::DoNotOptimize(fft3(f, Direction::forward));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.values.size()));
}
BENCHMARK(BM_fft3)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

static void BM_quad_box(benchmark::State& state) {
  const auto nodes = static_cast<std::size_t>(state.range(0));
  const RotatedBox box = knapp_box(16.0);
  const NormParams p{-0.5, 0.75, +1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(quad_box([&](double u, double v, double t) { return xsb_weight(u, v, t, p); }, box, nodes));
  }
}
BENCHMARK(BM_quad_box)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

static void BM_knapp_record(benchmark::State& state) {
  KnappOptions opt;
  opt.nodes = static_cast<std::size_t>(state.range(1));
  const double N = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(knapp_record(N, -0.5, 0.75, 1, SymbolKind::hyperbolic, opt));
}
BENCHMARK(BM_knapp_record)->Args({4, 32})->Args({256, 16})->Args({256, 32})->Unit(benchmark::kMillisecond);

static void BM_ratio_curve(benchmark::State& state) {
  const std::vector<double> Ns{4, 8, 16, 32, 64, 128, 256};
  for (auto _ : state) benchmark::DoNotOptimize(ratio_curve(-0.5, 0.75, 1, SymbolKind::hyperbolic, Ns));
}
BENCHMARK(BM_ratio_curve)->Unit(benchmark::kMillisecond);

static void BM_trilinear_direct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid3 g({3.0, 3.0, 3.0}, {n, n, n});
  const SpectralField f = random_spectrum(g, 1), gg = random_spectrum(g, 2), h = random_spectrum(g, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trilinear_direct(f, gg, h, 0.5, 0.75, kPlusMinus, SymbolKind::hyperbolic, Integrand::bound));
  }
}
BENCHMARK(BM_trilinear_direct)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_trilinear_fast(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid3 g({3.0, 3.0, 3.0}, {n, n, n});
  const SpectralField f = random_spectrum(g, 1), gg = random_spectrum(g, 2), h = random_spectrum(g, 3);
  for (auto _ : state) benchmark::DoNotOptimize(trilinear_fast(f, gg, h, 0.5, 0.75, kPlusMinus, SymbolKind::hyperbolic));
}
BENCHMARK(BM_trilinear_fast)->Arg(8)->Arg(12)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_free_propagate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SpatialField2 f(Grid2({16.0, 16.0}, {n, n}));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (auto& z : f.values) z = {nd(rng), nd(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(free_propagate(f, 1.3, SymbolKind::hyperbolic, 1, Side::space));
}
BENCHMARK(BM_free_propagate)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_layer_cake(benchmark::State& state) {
  const SpectralField g = lemma_library(lemma_grid(), -1, SymbolKind::hyperbolic, 1).front();
  for (auto _ : state) benchmark::DoNotOptimize(layer_cake(g, 0.75, -1, SymbolKind::hyperbolic, state.range(0) != 0));
}
BENCHMARK(BM_layer_cake)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_probe(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bilinear_constant_probe(0.0, 0.75, kMinusMinus, 10));
}
BENCHMARK(BM_probe)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
