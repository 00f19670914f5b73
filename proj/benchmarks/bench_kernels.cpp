/// @file bench_kernels.cpp
/// @brief Timings of the per-step kernels across grid sizes.

#include <benchmark/benchmark.h>

#include "ns2d/biot_savart.hpp"
#include "ns2d/evolution.hpp"
#include "ns2d/fields.hpp"
#include "ns2d/profiles.hpp"
#include "ns2d/spectral_operator.hpp"

using namespace ns2d;

namespace {

RealField datum(const Grid& g) {
  RealField w = sample_profile(g, Profile::G) + sample_profile(g, Profile::F1) + sample_profile(g, Profile::K);
  w *= 0.05;
  return w;
}

}  // namespace

//==============================================================================
// Kernels
//==============================================================================

static void BM_ForwardTransform(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), 12.0);
  const RealField w = datum(g);
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(w));
}
BENCHMARK(BM_ForwardTransform)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

static void BM_SpectralVelocity(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), 12.0);
  const RealField w = datum(g);
  for (auto _ : state) benchmark::DoNotOptimize(velocity_from_vorticity(w));
}
BENCHMARK(BM_SpectralVelocity)->Arg(128)->Arg(256);

static void BM_HybridVelocity(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), 12.0);
  const RealField w = datum(g);
  for (auto _ : state) benchmark::DoNotOptimize(hybrid_velocity(w));
}
BENCHMARK(BM_HybridVelocity)->Arg(128)->Arg(256);

static void BM_Rhs(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), 12.0);
  const RealField w = datum(g);
  for (auto _ : state) benchmark::DoNotOptimize(rhs(w));
}
BENCHMARK(BM_Rhs)->Arg(128)->Arg(256);

static void BM_IntegratorStep(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), 12.0);
  SimConfig c;
  c.dt = 0.005;
  Integrator integrator(g, c);
  RealField w = datum(g);
  for (auto _ : state) {
    w = integrator.step(w, c.dt);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_IntegratorStep)->Arg(128)->Arg(256);

static void BM_Semigroup(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), 12.0);
  const RealField w = datum(g);
  for (auto _ : state) benchmark::DoNotOptimize(semigroup_apply(w, 1.0));
}
BENCHMARK(BM_Semigroup)->Arg(128)->Arg(256);
BENCHMARK_MAIN();
