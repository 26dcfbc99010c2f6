#include <benchmark/benchmark.h>

#include <random>

#include "berezin_lab/berezin.hpp"
#include "berezin_lab/cplane.hpp"
#include "berezin_lab/kernels.hpp"
#include "berezin_lab/numrange.hpp"
#include "berezin_lab/unitorbit.hpp"

namespace bl = berezin_lab;

namespace {

bl::numrange::CMatrix random_matrix(std::size_t n) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> g(0.0, 1.0);
  bl::numrange::CMatrix t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, j) = {g(gen), g(gen)};
  }
  return t;
}

void BM_DirichletKernel(benchmark::State& state) {
  const bl::Complex z(0.3, 0.5), w(-0.2, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(bl::kernels::dirichlet_kernel(z, w));
}
BENCHMARK(BM_DirichletKernel);

void BM_FockKernel(benchmark::State& state) {
  const bl::Complex z(1.3, 0.5), w(-0.2, 2.7);
  for (auto _ : state) benchmark::DoNotOptimize(bl::kernels::fock_kernel(z, w));
}
BENCHMARK(BM_FockKernel);

void BM_SampleRange(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const bl::berezin::SamplingGrid grid{bl::berezin::SamplingGrid::Kind::PolarDisc, n, n, 1.0 - 1e-6,
                                       bl::berezin::SamplingGrid::Spacing::TanhClustered};
  const bl::symbols::SymbolSpec sym = bl::symbols::Blaschke{std::polar(0.5, bl::kPi / 3)};
  for (auto _ : state) benchmark::DoNotOptimize(bl::berezin::sample_range(bl::kernels::SpaceId::Dirichlet, sym, grid));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SampleRange)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ConvexityReport(benchmark::State& state) {
  const bl::PointCloud cloud = bl::berezin::sample_range(bl::kernels::SpaceId::Dirichlet,
                                                         bl::symbols::Blaschke{std::polar(0.5, bl::kPi / 3)},
                                                         bl::berezin::SamplingGrid::dirichlet_default());
  for (auto _ : state) benchmark::DoNotOptimize(bl::cplane::convexity_report(cloud));
}
BENCHMARK(BM_ConvexityReport)->Unit(benchmark::kMillisecond);

void BM_SupportSweep(benchmark::State& state) {
  const auto t = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bl::numrange::numerical_range_cloud(t, 360));
}
BENCHMARK(BM_SupportSweep)->Arg(2)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_HaarOrbit(benchmark::State& state) {
  const auto t = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bl::unitorbit::haar_orbit_cloud(t, 1000, 7));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_HaarOrbit)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_OrbitSweep2x2(benchmark::State& state) {
  const auto t = random_matrix(2);
  for (auto _ : state) benchmark::DoNotOptimize(bl::unitorbit::orbit_cloud_2x2(t, 256, 256));
}
BENCHMARK(BM_OrbitSweep2x2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
