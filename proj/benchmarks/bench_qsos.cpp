#include <benchmark/benchmark.h>

#include <random>

#include "qsos/pipeline.hpp"

using namespace qsos;

namespace {

RPoly rp(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RPoly(std::move(v));
}

PencilTriple example_pencil() { return {DForm{1.0, -1.0, 1.0}, DForm{0.0, 1.0, 0.0, -1.0}, DForm{1.0, 0.0, 0.0, 0.0, 1.0}}; }

TernaryQuartic example_form() {
  const PencilTriple f = example_pencil();
  return z_quartic(1.0, f.f2, f.f3, f.f4);
}

void BM_PhiMonster(benchmark::State& state) {
  const auto pqr = build_PQR(rp({1, -1, 1}), rp({0, 1, 0, -1}), rp({1, 0, 0, 0, 1}));
  const RPoly r2 = (pqr.R * pqr.R).with_nominal_degree(18);
  for (auto _ : state) benchmark::DoNotOptimize(phi(pqr.P, pqr.Q, r2, 8, 18));
}
BENCHMARK(BM_PhiMonster)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_DiscExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-50, 50);
  std::vector<Rational> c;
  for (int i = 0; i <= n; ++i) c.emplace_back(d(rng), 1 + (i % 5));
  const RPoly f(c);
  for (auto _ : state) benchmark::DoNotOptimize(disc(f, n));
}
BENCHMARK(BM_DiscExact)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_ExactGenericity(benchmark::State& state) {
  const RForm f2{Rational(1), Rational(-1), Rational(1)}, f3{Rational(0), Rational(1), Rational(0), Rational(-1)},
      f4{Rational(1), Rational(0), Rational(0), Rational(0), Rational(1)};
  GenericityOptions opt;
  opt.include_e10 = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(genericity(f2, f3, f4, opt));
}
BENCHMARK(BM_ExactGenericity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TrackAll(benchmark::State& state) {
  const PencilTriple f = example_pencil();
  const auto s = seeds(f);
  TrackOptions opt;
  opt.keep_states = false;
  opt.max_step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(track_all(s, f, opt, false));
  state.counters["paths"] = static_cast<double>(s.size());
}
BENCHMARK(BM_TrackAll)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_MinOnSphere(benchmark::State& state) {
  const TernaryQuartic F = example_form();
  for (auto _ : state) benchmark::DoNotOptimize(min_on_sphere(F));
}
BENCHMARK(BM_MinOnSphere)->Unit(benchmark::kMillisecond);

void BM_DecomposeRandom(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    state.PauseTiming();
    const TernaryQuartic F = random_psd_form(seed++);
    state.ResumeTiming();
    benchmark::DoNotOptimize(decompose(F));
  }
}
BENCHMARK(BM_DecomposeRandom)->Unit(benchmark::kMillisecond);

void BM_DecomposeExample(benchmark::State& state) {
  const TernaryQuartic F = example_form();
  for (auto _ : state) benchmark::DoNotOptimize(decompose(F));
}
BENCHMARK(BM_DecomposeExample)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
