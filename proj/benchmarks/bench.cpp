#include <benchmark/benchmark.h>

#include <random>

#include "eigensplit/formal_group.hpp"
#include "eigensplit/homotopy.hpp"
#include "eigensplit/kummer.hpp"
#include "eigensplit/lfunctions.hpp"

using namespace eigensplit;

namespace {

PadicSeries random_series(const PadicCtx& ctx, std::size_t t, bool zero_constant, std::mt19937_64& rng) {
  std::vector<PadicInt> c;
  for (std::size_t k = 0; k < t; ++k) c.push_back(PadicInt(ctx, static_cast<i64>(rng() % ctx.modulus())));
  c[0] = zero_constant ? PadicInt::zero(ctx) : PadicInt(ctx, 1);
  return PadicSeries(c);
}

CycElt random_one_unit(const CycRingPtr& r, std::mt19937_64& rng) {
  std::vector<u64> d(static_cast<std::size_t>(r->degree()));
  for (auto& x : d) x = rng() % r->ctx().modulus();
  d[0] = (d[0] - d[0] % r->prime() + 1) % r->ctx().modulus();
  return CycElt(r, d, r->pi_prec());
}

void BM_Compose(benchmark::State& st) {
  std::mt19937_64 rng(1);
  const PadicCtx ctx(7, 6);
  const auto t = static_cast<std::size_t>(st.range(0));
  const PadicSeries f = random_series(ctx, t, false, rng);
  const PadicSeries g = random_series(ctx, t, true, rng);
  for (auto _ : st) benchmark::DoNotOptimize(compose(f, g));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Compose)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_Reversion(benchmark::State& st) {
  std::mt19937_64 rng(2);
  const PadicCtx ctx(7, 6);
  std::vector<PadicInt> c = random_series(ctx, static_cast<std::size_t>(st.range(0)), true, rng).coeffs();
  c[1] = PadicInt(ctx, 1);
  const PadicSeries f(c);
  for (auto _ : st) benchmark::DoNotOptimize(reversion(f));
}
BENCHMARK(BM_Reversion)->Arg(32)->Arg(64);

void BM_Theta(benchmark::State& st) {
  const u64 p = static_cast<u64>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(theta_rational(p, p * p + 1));
}
BENCHMARK(BM_Theta)->Arg(3)->Arg(5)->Arg(7);

void BM_EigenUnit(benchmark::State& st) {
  std::mt19937_64 rng(3);
  const u64 p = static_cast<u64>(st.range(0));
  const CycRingPtr r = make_cyc_ring(PadicCtx(p, 4), 0, static_cast<int>(p) + 3);
  const CycElt u = random_one_unit(r, rng);
  for (auto _ : st) benchmark::DoNotOptimize(eigen_unit(1, u));
}
BENCHMARK(BM_EigenUnit)->Arg(5)->Arg(7)->Arg(13);

void BM_NormDown(benchmark::State& st) {
  std::mt19937_64 rng(4);
  const u64 p = static_cast<u64>(st.range(0));
  const PadicCtx ctx(p, 4);
  const int m = static_cast<int>(p) + 3;
  const CycRingPtr r0 = make_cyc_ring(ctx, 0, m);
  const CycRingPtr r1 = make_cyc_ring(ctx, 1, static_cast<int>(p) * m);
  const CycElt u = random_one_unit(r1, rng);
  for (auto _ : st) benchmark::DoNotOptimize(norm_down(u, r0));
}
BENCHMARK(BM_NormDown)->Arg(3)->Arg(5);

void BM_KummerPhi(benchmark::State& st) {
  const u64 p = static_cast<u64>(st.range(0));
  const CycElt u = cw_unit(make_cyc_ring(PadicCtx(p, 4), 0, static_cast<int>(p) + 3));
  for (auto _ : st)
    for (int i = 1; i <= static_cast<int>(p) - 2; ++i) benchmark::DoNotOptimize(kummer_phi(i, u));
}
BENCHMARK(BM_KummerPhi)->Arg(5)->Arg(13);

void BM_Bernoulli(benchmark::State& st) {
  const auto n = static_cast<unsigned>(st.range(0));
  for (auto _ : st) {
    BernoulliTable t;
    benchmark::DoNotOptimize(t.get(n));
  }
}
BENCHMARK(BM_Bernoulli)->Arg(100)->Arg(200);

void BM_LpMeasure(benchmark::State& st) {
  const u64 p = static_cast<u64>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(lp_measure(p, 2, 3, 3));
}
BENCHMARK(BM_LpMeasure)->Arg(5)->Arg(37);

void BM_Duality(benchmark::State& st) {
  const u64 p = static_cast<u64>(st.range(0));
  const int q = static_cast<int>(p - 1);
  for (auto _ : st) {
    HomotopyEngine e(p, EngineOptions{true});
    benchmark::DoNotOptimize(e.verify_main_duality(-2 * q, 4 * q));
  }
}
BENCHMARK(BM_Duality)->Arg(7)->Arg(37)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
