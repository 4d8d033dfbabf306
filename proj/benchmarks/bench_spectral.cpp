#include <benchmark/benchmark.h>

#include <random>

#include "spectral_enclose/assembly.hpp"
#include "spectral_enclose/eigensolve.hpp"
#include "spectral_enclose/lmg.hpp"

using namespace spectral;

static void BM_Assemble(benchmark::State& state) {
  const Mesh mesh = make_mesh(6.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(Potential::anharmonic(), mesh));
}
BENCHMARK(BM_Assemble)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_EigSym(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(eig_sym(m, Vectors::skip));
}
BENCHMARK(BM_EigSym)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

static void BM_EigGsymForms(benchmark::State& state) {
  const FormMatrices forms = assemble(Potential::harmonic(), make_mesh(6.0, static_cast<std::size_t>(state.range(0))));
  const ShiftedForms shifted = shift(forms, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(eig_gsym(shifted.a1t, shifted.a2t, Vectors::skip));
}
BENCHMARK(BM_EigGsymForms)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_Enclose(benchmark::State& state) {
  const FormMatrices forms = assemble(Potential::harmonic(), make_mesh(6.0, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(enclose(forms, -20.0, 20.0, 5));
}
BENCHMARK(BM_Enclose)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
