#include <benchmark/benchmark.h>

#include "fibdiff/heights.hpp"
#include "fibdiff/realnum.hpp"
#include "fibdiff/reduction.hpp"
#include "fibdiff/sequences.hpp"

using namespace fibdiff;

static void BM_FibDoubling(benchmark::State& state) {
  long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(seq::fib(n));
  }
}
BENCHMARK(BM_FibDoubling)->Arg(200)->Arg(10000)->Arg(500000);

static void BM_CertifySqrt5(benchmark::State& state) {
  mpq_class width = real::pow10(-state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        real::CertifiedReal::certify(real::sqrt5(), width));
  }
}
BENCHMARK(BM_CertifySqrt5)->Arg(40)->Arg(400)->Arg(4000);

static void BM_CertifyEta3Log(benchmark::State& state) {
  real::ExprPtr src =
      real::log_(heights::to_expr(heights::eta3_exact(state.range(0)))) /
      real::log_golden_ratio();
  mpq_class width = real::pow10(-40);
  for (auto _ : state) {
    benchmark::DoNotOptimize(real::CertifiedReal::certify(src, width));
  }
}
BENCHMARK(BM_CertifyEta3Log)->Arg(5)->Arg(50)->Arg(160);

static void BM_CfExpand(benchmark::State& state) {
  real::CertifiedReal gamma = real::CertifiedReal::certify(
      real::log_(real::lit(7)) / real::log_golden_ratio(), real::pow10(-40));
  mpz_class q_min;
  mpz_ui_pow_ui(q_min.get_mpz_t(), 10, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduction::cf_expand(gamma, q_min));
  }
}
BENCHMARK(BM_CfExpand)->Arg(6)->Arg(15)->Arg(30);

static void BM_DujellaPethoStep(benchmark::State& state) {
  real::CertifiedReal gamma = real::CertifiedReal::certify(
      real::log_(real::lit(7)) / real::log_golden_ratio(), real::pow10(-40));
  real::CertifiedReal mu = real::CertifiedReal::certify(
      real::log_(real::sqrt5()) / real::log_golden_ratio(), real::pow10(-40));
  mpz_class m_cap("690211851323243698175908703025");
  auto cf = reduction::cf_expand(gamma, 6 * m_cap, 4);
  mpz_class q;
  for (const auto& [pk, qk] : cf.convergents) {
    if (qk > 6 * m_cap) {
      q = qk;
      break;
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduction::dujella_petho_step(
        gamma, mu, mpq_class(1663, 10), real::golden_ratio(), m_cap, q));
  }
}
BENCHMARK(BM_DujellaPethoStep);

BENCHMARK_MAIN();
