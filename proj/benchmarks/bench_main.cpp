#include <benchmark/benchmark.h>

#include "k3aut/counting.hpp"
#include "k3aut/diagquartic.hpp"
#include "k3aut/groupcert.hpp"
#include "k3aut/normal_form.hpp"
#include "k3aut/reflection.hpp"

using namespace k3aut;

static void BM_CountFiberedU3(benchmark::State& state) {
  const SurfaceModel m = load_surface(shipped_surface_path("u3"));
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_fibered(m, n));
}
BENCHMARK(BM_CountFiberedU3)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_CountDirectY3(benchmark::State& state) {
  const SurfaceModel m = load_surface(shipped_surface_path("y3"));
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_direct(m, n));
}
BENCHMARK(BM_CountDirectY3)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

static void BM_DescentPellPowers(benchmark::State& state) {
  const IntMat gram{{10, 0}, {0, -4}};
  const IntMat A1{{1, 0}, {0, -1}};
  const IntMat A2{{721, 456}, {-1140, -721}};
  const std::vector<IntVec> walls{vec({0, 1}), vec({12, -19})};
  IntMat g = IntMat::identity(2);
  const IntMat p{{19, 12}, {30, 19}};
  for (long k = 0; k < state.range(0); ++k) g = g * p;
  for (auto _ : state) benchmark::DoNotOptimize(chamber_descent(gram, g, vec({1, -1}), walls, {A1, A2}));
}
BENCHMARK(BM_DescentPellPowers)->RangeMultiplier(4)->Range(1, 64);

static void BM_DiagonalIncidence(benchmark::State& state) {
  const auto lines = diagonal_lines(Rat(3));
  for (auto _ : state) benchmark::DoNotOptimize(incidence_gram(lines));
}
BENCHMARK(BM_DiagonalIncidence)->Unit(benchmark::kMillisecond);

static void BM_DiagonalCertificate(benchmark::State& state) {
  const auto d = build_diagonal_quartic(Rat(3));
  std::vector<GaloisOrbit> orbits = d.line_orbits;
  orbits.insert(orbits.end(), d.conic_orbits.begin(), d.conic_orbits.end());
  const auto rx = rx_generators(d.pic.picard, orbits, d.fixed.basis);
  const auto y = *solve_row_integer(d.fixed.basis, d.H);
  // the reflection group itself gives index 1; the bench measures descent cost
  for (auto _ : state)
    benchmark::DoNotOptimize(certify_finite_quotient(d.fixed.gram, rx.generators, rx.walls, rx.generators, y));
}
BENCHMARK(BM_DiagonalCertificate)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
