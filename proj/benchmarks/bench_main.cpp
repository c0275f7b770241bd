#include <benchmark/benchmark.h>

#include "charvar/dynamics.hpp"
#include "charvar/reduction.hpp"
#include "charvar/trace_calculus.hpp"

using namespace charvar;

static void BM_TracePolynomial(benchmark::State& state) {
  set_trace_memo_enabled(false);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(trace_polynomial(random_free_word(state.range(0), seed++ % 64)));
  set_trace_memo_enabled(true);
}
BENCHMARK(BM_TracePolynomial)->Arg(8)->Arg(16)->Arg(24);

// Twelve (exact) or six (float) steps above (3, 3, 9).
static Character deep_start(Mode m) {
  if (m == Mode::Exact) return apply(GammaElement::parse("Qx Qy Qz Qx Qy Qz Qx Qy Qz Qx Qy Qz"), Character::exact(3, 3, 9));
  return apply(GammaElement::parse("Qx Qy Qz Qx Qy Qz"), Character::floating(3, 3, 9));
}

static void BM_ReduceExact(benchmark::State& state) {
  const Character start = deep_start(Mode::Exact);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(start));
}
BENCHMARK(BM_ReduceExact);

static void BM_ReduceFloat(benchmark::State& state) {
  const Character start = deep_start(Mode::Float);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(start));
}
BENCHMARK(BM_ReduceFloat);

static void BM_SampleLevelSet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_level_set(0.5, static_cast<std::size_t>(state.range(0)), Window{}, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleLevelSet)->Arg(10000);

static void BM_FloatOrbit(benchmark::State& state) {
  const Character start = Character::floating(0.3, 0.5, 1.2);
  for (auto _ : state) {
    const long n = orbit_visit(start, OrbitPolicy::uniform(3), state.range(0),
                               [](long, const Character&, std::string_view) { return true; });
    benchmark::DoNotOptimize(n);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FloatOrbit)->Arg(100000);

static void BM_ExactOrbit(benchmark::State& state) {
  const Character start = Character::exact(Rational(1, 2), Rational(3), Rational(2));
  for (auto _ : state) benchmark::DoNotOptimize(orbit(start, OrbitPolicy::random_reduced_word(3, 5), state.range(0)));
}
BENCHMARK(BM_ExactOrbit)->Arg(20);
BENCHMARK_MAIN();
