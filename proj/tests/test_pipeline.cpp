#include <algorithm>

#include "doctest.h"
#include "fibdiff/errors.hpp"
#include "fibdiff/pipeline.hpp"

using namespace fibdiff;
using pipeline::PipelineConfig;
using seq::SolutionTriple;

namespace {

// Independent oracle: iterative Fibonacci table plus trial division by p.
std::vector<SolutionTriple> search_oracle(long p, long cap) {
  std::vector<mpz_class> f(static_cast<std::size_t>(cap) + 1);
  f[0] = 0;
  if (cap >= 1) f[1] = 1;
  for (long i = 2; i <= cap; ++i) {
    f[static_cast<std::size_t>(i)] =
        f[static_cast<std::size_t>(i - 1)] + f[static_cast<std::size_t>(i - 2)];
  }
  std::vector<SolutionTriple> out;
  for (long n = 2; n <= cap; ++n) {
    for (long m = 0; m < n; ++m) {
      mpz_class diff =
          f[static_cast<std::size_t>(n)] - f[static_cast<std::size_t>(m)];
      if (diff <= 0) continue;
      mpz_class v = diff;
      unsigned long a = 0;
      while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(),
                        static_cast<unsigned long>(p));
        ++a;
      }
      if (v == 1 && a < static_cast<unsigned long>(n)) {
        out.push_back({n, m, a});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("brute force search matches the independent oracle") {
  auto got7 = pipeline::brute_force_search(7, 200);
  auto want7 = search_oracle(7, 200);
  CHECK(got7 == want7);
  // F_14 - F_9 = 377 - 34 = 343 = 7^3 is a genuine a >= 2 solution.
  bool has_143 = false;
  for (const auto& t : got7) {
    has_143 = has_143 || (t.n == 14 && t.m == 9 && t.a == 3);
  }
  CHECK(has_143);

  auto got13 = pipeline::brute_force_search(13, 200);
  CHECK(got13 == search_oracle(13, 200));
  for (const auto& t : got13) CHECK(t.a <= 1);

  auto got2 = pipeline::brute_force_search(2, 30);
  CHECK(got2 == search_oracle(2, 30));
  CHECK(!got2.empty());
}

TEST_CASE("small case split resolves the trivial families") {
  auto rows7 = pipeline::small_case_split(7);
  // F_8 = 21 is not a power of 7; the only F_j = 7^a are j in {1,2} (a=0).
  for (const auto& r : rows7) {
    mpz_class p_a;
    mpz_ui_pow_ui(p_a.get_mpz_t(), 7, static_cast<unsigned long>(r.triple.a));
    CHECK(seq::fib(r.triple.n) - seq::fib(r.triple.m) == p_a);
    CHECK(r.triple.a <= 1);
  }
  // p = 13 = F_7: the m=0 family contributes (7, 0, 1).
  auto rows13 = pipeline::small_case_split(13);
  bool has_701 = false;
  for (const auto& r : rows13) {
    has_701 = has_701 || (r.triple.n == 7 && r.triple.m == 0 &&
                          r.triple.a == 1 && r.rule == "m=0");
  }
  CHECK(has_701);
  // p = 2 = F_3: the n-m=2 family gives F_{m+1} = 2 at m = 2, so (4, 2, 1).
  auto rows2 = pipeline::small_case_split(2);
  bool has_421 = false;
  for (const auto& r : rows2) {
    has_421 = has_421 || (r.triple.n == 4 && r.triple.m == 2 &&
                          r.triple.a == 1 && r.rule == "n-m=2");
  }
  CHECK(has_421);
}

TEST_CASE("residual elimination covers the paper exception shapes") {
  auto d4 = pipeline::eliminate_residual(7, 4);
  CHECK(d4.rule == "d4-lucas-shift");

  // d = 66 = 2 mod 4: fixed Lucas factor L_33 = 7881196, not a 13-power.
  auto d66 = pipeline::eliminate_residual(13, 66);
  CHECK(d66.rule == "fixed-lucas-factor");
  CHECK(d66.factor_index == 33);
  CHECK(d66.factor_value == 7881196);

  // d = 88 = 0 mod 4: fixed Fibonacci factor F_44 = 701408733.
  auto d88 = pipeline::eliminate_residual(13, 88);
  CHECK(d88.rule == "fixed-fib-factor");
  CHECK(d88.factor_index == 44);
  CHECK(d88.factor_value == 701408733);

  CHECK_THROWS_AS(pipeline::eliminate_residual(7, 5), StageError);  // odd d
  // d = 6 with p = 2: L_3 = 4 = 2^2 is itself a 2-power, inconclusive.
  CHECK_THROWS_AS(pipeline::eliminate_residual(2, 6), StageError);
}

TEST_CASE("full proof for p = 7") {
  PipelineConfig cfg;
  cfg.prime = 7;
  auto cert = pipeline::run_full_proof(cfg);
  REQUIRE(cert.certified);
  CHECK(cert.failed_stage.empty());
  std::vector<SolutionTriple> expect = {{2, 0, 0}, {3, 1, 0}, {3, 2, 0},
                                        {4, 3, 0}, {6, 1, 1}, {6, 2, 1},
                                        {14, 9, 3}};
  CHECK(cert.verdict == expect);
  // Every verdict entry re-verifies exactly.
  for (const auto& t : cert.verdict) {
    mpz_class p_a;
    mpz_ui_pow_ui(p_a.get_mpz_t(), 7, static_cast<unsigned long>(t.a));
    CHECK(seq::fib(t.n) - seq::fib(t.m) == p_a);
  }
  REQUIRE(cert.sweep.has_value());
  CHECK(cert.sweep->exceptions == std::vector<long>{4});
  CHECK(cert.residual_cases.size() == 1);
}

TEST_CASE("full proof for p = 13") {
  PipelineConfig cfg;
  cfg.prime = 13;
  auto cert = pipeline::run_full_proof(cfg);
  REQUIRE(cert.certified);
  std::vector<SolutionTriple> expect = {{2, 0, 0}, {3, 1, 0}, {3, 2, 0},
                                        {4, 3, 0}, {7, 0, 1}, {8, 6, 1},
                                        {9, 8, 1}};
  CHECK(cert.verdict == expect);
  REQUIRE(cert.sweep.has_value());
  CHECK(cert.sweep->exceptions == std::vector<long>({4, 66, 88}));
  CHECK(cert.residual_cases.size() == 3);
}

TEST_CASE("full proof for an off-paper prime terminates") {
  PipelineConfig cfg;
  cfg.prime = 11;
  auto cert = pipeline::run_full_proof(cfg);
  CHECK(cert.certified);
  for (const auto& t : cert.verdict) {
    mpz_class p_a;
    mpz_ui_pow_ui(p_a.get_mpz_t(), 11, static_cast<unsigned long>(t.a));
    CHECK(seq::fib(t.n) - seq::fib(t.m) == p_a);
  }
}

TEST_CASE("non-prime input fails as a stage, not a crash") {
  PipelineConfig cfg;
  cfg.prime = 15;
  auto cert = pipeline::run_full_proof(cfg);
  CHECK(!cert.certified);
  CHECK(!cert.failed_stage.empty());
  CHECK(cert.verdict.empty());
}

TEST_CASE("primality helper") {
  CHECK(pipeline::is_prime(2));
  CHECK(pipeline::is_prime(7));
  CHECK(pipeline::is_prime(13));
  CHECK(!pipeline::is_prime(1));
  CHECK(!pipeline::is_prime(15));
  CHECK(!pipeline::is_prime(0));
}
