#include <benchmark/benchmark.h>

#include <alr/core_shell.hpp>
#include <alr/field.hpp>
#include <alr/plane.hpp>

#include <memory>

namespace {

alr::ModalCoefficients inverse_square(int order) {
  alr::ModalCoefficients h(order);
  for (int n = 1; n <= order; ++n) h.plus[n - 1] = alr::cplx(1.0 / (n * n), 0.0);
  return h;
}

alr::SolverConfig shell_config(int truncation) {
  alr::SolverConfig config;
  config.R = 3.0;
  config.delta = 1e-8;
  config.truncation = truncation;
  return config;
}

}  // namespace

static void BM_solve_modes(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const alr::ModalCoefficients h = inverse_square(order);
  const alr::SolverConfig config = shell_config(order);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alr::solve_modes(config, h));
  }
}
BENCHMARK(BM_solve_modes)->Arg(20)->Arg(100)->Arg(500);

static void BM_field_row(benchmark::State& state) {
  const alr::CoreShellSolution sol = alr::solve_modes(shell_config(100), inverse_square(100));
  const alr::HarmonicField u = sol.field();
  for (auto _ : state) {
    alr::cplx acc(0.0, 0.0);
    for (int i = 0; i < 400; ++i) {
      const double x = -2.5 + 5.0 * i / 399.0;
      acc += u.evaluate(alr::PolarPoint{std::hypot(x, 0.7), std::atan2(0.7, x)});
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 400);
}
BENCHMARK(BM_field_row);

static void BM_disk_neumann(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const alr::SourceProfiles folded =
      alr::pushforward_source(alr::cutoff_harmonic_source(modes), modes);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alr::solve_disk_neumann(folded));
  }
}
BENCHMARK(BM_disk_neumann)->Arg(20)->Arg(100);

static void BM_power_sector(benchmark::State& state) {
  const auto profiles = std::make_shared<const alr::RadialProfiles>(
      alr::solve_disk_neumann(alr::pushforward_source(alr::cutoff_harmonic_source(100), 100)));
  const alr::PlaneField u(alr::solve_plane_modes(profiles, 1e-5));
  const alr::SectorRegion shell{1.2, 1.8, 0.0, 3.14159265358979323846 / 4.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(alr::power_on_region(u, shell));
  }
}
BENCHMARK(BM_power_sector);

BENCHMARK_MAIN();
