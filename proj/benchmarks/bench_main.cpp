#include <benchmark/benchmark.h>

#include <random>

#include "curtis/coherent.hpp"
#include "curtis/cyclotomic.hpp"
#include "curtis/finite.hpp"
#include "curtis/frob.hpp"
#include "curtis/weil.hpp"

namespace {

using namespace curtis;

void BM_CyclotomicMultiply(benchmark::State& state) {
  const std::int64_t E = state.range(0);
  std::mt19937_64 rng(1);
  std::vector<mpz_class> a, b;
  for (std::int64_t i = 0; i < E; ++i) {
    a.emplace_back(static_cast<long>(rng() % 201) - 100);
    b.emplace_back(static_cast<long>(rng() % 201) - 100);
  }
  const Cyclotomic x = Cyclotomic::from_coeffs(E, a);
  const Cyclotomic y = Cyclotomic::from_coeffs(E, b);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_CyclotomicMultiply)->Arg(12)->Arg(36)->Arg(72)->Arg(252);

void BM_CoherentBasis(benchmark::State& state) {
  const std::int64_t q = state.range(0);
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(coherent_basis(q, n).basis.size());
}
BENCHMARK(BM_CoherentBasis)->Args({2, 2})->Args({3, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);

void BM_IsCoherentTrace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = std::make_shared<const TameParams>(3, 2, n);
  const CoherentTuple t = trace_tuple(p, n, 1, 2, ModeConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(is_coherent(t).coherent);
}
BENCHMARK(BM_IsCoherentTrace)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_InduceFactor(benchmark::State& state) {
  const auto p = std::make_shared<const TameParams>(3, 2, 6);
  const int d = static_cast<int>(state.range(0));
  const Cyclotomic alpha = Cyclotomic::zeta(12, 5);
  for (auto _ : state) benchmark::DoNotOptimize(induce_factor(*p, d, p->scale(d), alpha, ModeConfig{}).size());
}
BENCHMARK(BM_InduceFactor)->DenseRange(1, 6);

void BM_MetacyclicOracle(benchmark::State& state) {
  const auto p = std::make_shared<const TameParams>(3, 2, 6);
  const int d = static_cast<int>(state.range(0));
  const Cyclotomic alpha = Cyclotomic::zeta(12, 5);
  for (auto _ : state) benchmark::DoNotOptimize(metacyclic_oracle(*p, d, p->scale(d), alpha, ModeConfig{}).size());
}
BENCHMARK(BM_MetacyclicOracle)->DenseRange(1, 6)->Unit(benchmark::kMicrosecond);

void BM_EnumeratePoints(benchmark::State& state) {
  const std::int64_t r = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_points(r, 2, 2, true).count);
}
BENCHMARK(BM_EnumeratePoints)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_RestrictInvariant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = std::make_shared<const TameParams>(3, 2, n);
  const InvariantFn inv = InvariantFn::trace(Word::parse("s f^2 s^-1 f")) * InvariantFn::trace(Word::sf(1, 1)) +
                          InvariantFn::det_fr(-1);
  for (auto _ : state) benchmark::DoNotOptimize(invariant_to_A(inv, p, n, ModeConfig{}));
}
BENCHMARK(BM_RestrictInvariant)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
