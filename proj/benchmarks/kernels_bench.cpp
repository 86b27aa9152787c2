#include <benchmark/benchmark.h>

#include <cmath>

#include "fraclap/averages.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/radial.hpp"

namespace bm = benchmark;
using namespace fraclap;

namespace {

RadialFunction bubble(double exponent) {
  return sample_radial([=](double r) { return std::pow(1.0 + r * r, -exponent); }, default_grid(),
                       PowerTail{2.0 * exponent, 1.0});
}

}  // namespace

static void BM_RingKernel(bm::State& st) {
  const int n = static_cast<int>(st.range(0));
  const QuadratureSpec spec;
  for (auto _ : st) {
    bm::DoNotOptimize(ring_kernel(1.0, 1.7, 1.5, n, spec));
  }
}

static void BM_RieszPotentialAt(bm::State& st) {
  const auto f = bubble(2.0);
  const QuadratureSpec spec;
  for (auto _ : st) {
    bm::DoNotOptimize(riesz_potential_at(f, 1.0, 3, 1.0, spec));
  }
}

static void BM_RieszPotentialGrid(bm::State& st) {
  set_thread_count(1);
  const auto f = bubble(2.0);
  const QuadratureSpec spec;
  RieszOptions options;
  options.output_grid = log_grid(1e-2, 1e2, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    bm::DoNotOptimize(riesz_potential(f, 1.0, 3, spec, options));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
  set_thread_count(0);
}

static void BM_FracLaplacian(bm::State& st) {
  const auto u = bubble(1.0);
  const QuadratureSpec spec;
  const double r = static_cast<double>(st.range(0)) / 10.0;
  for (auto _ : st) {
    bm::DoNotOptimize(frac_laplacian(u, 1.0, 3, r, spec));
  }
}

static void BM_NonlocalAverage(bm::State& st) {
  const auto u = bubble(1.0);
  const QuadratureSpec spec;
  for (auto _ : st) {
    bm::DoNotOptimize(nonlocal_average(u, 1.0, 3.0, spec));
  }
}

BENCHMARK(BM_RingKernel)->Arg(3)->Arg(4)->Arg(5);
BENCHMARK(BM_RieszPotentialAt)->Unit(bm::kMicrosecond);
BENCHMARK(BM_RieszPotentialGrid)->Arg(16)->Arg(64)->Unit(bm::kMillisecond);
BENCHMARK(BM_FracLaplacian)->Arg(1)->Arg(10)->Arg(100)->Unit(bm::kMicrosecond);
BENCHMARK(BM_NonlocalAverage)->Unit(bm::kMicrosecond);
BENCHMARK_MAIN();
