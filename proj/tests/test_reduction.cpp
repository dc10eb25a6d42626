#include "doctest.h"
#include "fibdiff/errors.hpp"
#include "fibdiff/reduction.hpp"
#include "fibdiff/sequences.hpp"

using namespace fibdiff;
using real::CertifiedReal;
using real::ExprPtr;
using real::lit;
using real::log_;

TEST_CASE("golden ratio continued fraction is all ones") {
  CertifiedReal phi =
      CertifiedReal::certify(real::golden_ratio(), real::pow10(-30));
  auto cf = reduction::cf_expand(phi, 100);
  REQUIRE(cf.terms.size() >= 12);
  for (const auto& t : cf.terms) CHECK(t == 1);
  // Convergents are ratios of consecutive Fibonacci numbers.
  for (std::size_t k = 0; k < cf.convergents.size(); ++k) {
    CHECK(cf.convergents[k].first == seq::fib(static_cast<long>(k) + 2));
    CHECK(cf.convergents[k].second == seq::fib(static_cast<long>(k) + 1));
  }
  // First denominator beyond 100 is F_12 = 144.
  for (const auto& [p, q] : cf.convergents) {
    if (q > 100) {
      CHECK(q == 144);
      break;
    }
  }
}

TEST_CASE("rational input is rejected") {
  CertifiedReal r =
      CertifiedReal::certify(lit(mpq_class(22, 7)), real::pow10(-30));
  CHECK_THROWS_AS(reduction::cf_expand(r, 100), DomainError);
}

TEST_CASE("convergent determinant and best-approximation laws") {
  ExprPtr gamma_src = log_(lit(7)) / real::log_golden_ratio();
  CertifiedReal gamma = CertifiedReal::certify(gamma_src, real::pow10(-40));
  auto cf = reduction::cf_expand(gamma, mpz_class(1000000));
  REQUIRE(cf.convergents.size() >= 3);
  for (std::size_t k = 1; k < cf.convergents.size(); ++k) {
    const auto& [pk, qk] = cf.convergents[k];
    const auto& [pk1, qk1] = cf.convergents[k - 1];
    mpz_class det = pk * qk1 - pk1 * qk;
    CHECK((det == 1 || det == -1));
    CHECK(qk > qk1);  // strictly increasing for k >= 1
    // |gamma - p/q| < 1/q^2, certified.
    CHECK(real::compare(real::abs_(gamma_src - lit(mpq_class(pk, qk))),
                        mpq_class(1) / mpq_class(qk * qk)) ==
          real::Ordering::Less);
  }
}

TEST_CASE("dujella_petho_step on the paper round-1 instances") {
  ExprPtr la = real::log_golden_ratio();
  for (auto [p, cap_digits, eps_mid, thr_mid] :
       {std::tuple{7L, "690211851323243698175908703025", 0.403101, 161.64334},
        std::tuple{13L, "734589885366460976875828960971", 0.296932,
                   160.74358}}) {
    mpz_class m_cap(cap_digits);
    CertifiedReal gamma =
        CertifiedReal::certify(log_(lit(p)) / la, real::pow10(-40));
    CertifiedReal mu =
        CertifiedReal::certify(log_(real::sqrt5()) / la, real::pow10(-40));
    auto cf = reduction::cf_expand(gamma, 6 * m_cap, 4);
    auto res = reduction::apply_reduction(gamma, mu, mpq_class(1663, 10),
                                          real::golden_ratio(), m_cap, cf);
    REQUIRE(res.status == reduction::StepStatus::Certified);
    CHECK(res.instance.q > 6 * m_cap);
    double eps = mpq_get_d(res.instance.epsilon.midpoint().get_mpq_t());
    double thr = mpq_get_d(res.instance.threshold.midpoint().get_mpq_t());
    CHECK(std::abs(eps - eps_mid) < 1e-5);
    CHECK(std::abs(thr - thr_mid) < 1e-4);
  }
}

TEST_CASE("mu = 0 forces a non-positive epsilon") {
  CertifiedReal gamma =
      CertifiedReal::certify(real::sqrt_(lit(2)), real::pow10(-40));
  CertifiedReal mu = CertifiedReal::certify(lit(0), real::pow10(-40));
  auto cf = reduction::cf_expand(gamma, mpz_class(100));
  mpz_class q;
  for (const auto& [pk, qk] : cf.convergents) {
    if (qk > 60) {
      q = qk;
      break;
    }
  }
  REQUIRE(q > 0);
  auto res = reduction::dujella_petho_step(gamma, mu, mpq_class(1), lit(2),
                                           mpz_class(10), q);
  CHECK(res.status == reduction::StepStatus::NonPositive);
  CHECK(res.instance.epsilon.upper() <= 0);
}

TEST_CASE("dujella-petho exhaustive soundness on a synthetic instance") {
  // gamma = sqrt 2, mu = sqrt 3 - 1, A = 2, B = 3, M = 300.
  ExprPtr gamma_src = real::sqrt_(lit(2));
  ExprPtr mu_src = real::sqrt_(lit(3)) - lit(1);
  CertifiedReal gamma = CertifiedReal::certify(gamma_src, real::pow10(-60));
  CertifiedReal mu = CertifiedReal::certify(mu_src, real::pow10(-60));
  const mpz_class m_cap = 300;
  auto cf = reduction::cf_expand(gamma, 6 * m_cap, 4);
  auto res = reduction::apply_reduction(gamma, mu, mpq_class(2), lit(3),
                                        m_cap, cf);
  REQUIRE(res.status == reduction::StepStatus::Certified);
  REQUIRE(res.instance.omega_cap.has_value());
  long omega = *res.instance.omega_cap;
  CHECK(omega > 0);
  // At omega the lemma promises no solution of 0 < |m gamma - n + mu| <
  // A B^{-omega} with 1 <= m <= M. A B^{-omega} is monotone decreasing in
  // omega, so checking omega alone covers every omega' >= omega.
  mpq_class bound_hi;  // upper bound on 2 * 3^{-omega}
  {
    mpz_class p3;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, static_cast<unsigned long>(omega));
    bound_hi = mpq_class(2) / mpq_class(p3);
  }
  const mpq_class glo = gamma.lower(), ghi = gamma.upper();
  const mpq_class mlo = mu.lower(), mhi = mu.upper();
  long n_max = static_cast<long>(300 * 1.4143) + 2;
  int violations = 0;
  for (long m = 1; m <= 300; ++m) {
    for (long n = 0; n <= n_max; ++n) {
      mpq_class dlo = m * glo - n + mlo;
      mpq_class dhi = m * ghi - n + mhi;
      mpq_class abs_lo;  // certified lower bound on |m gamma - n + mu|
      if (dlo > 0) {
        abs_lo = dlo;
      } else if (dhi < 0) {
        abs_lo = -dhi;
      } else {
        abs_lo = 0;  // interval straddles zero: width 1e-60, treat as zero
      }
      if (abs_lo != 0 && abs_lo < bound_hi) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("sweep exposes d = 4 as a structural exception") {
  // mu_4 = log(alpha^2)/log(alpha) = 2 exactly, so ||mu_4 q|| = 0 and
  // epsilon < 0 for every convergent.
  reduction::SweepOptions opts;
  opts.eps_floor = 0;
  opts.exception_ok = [](long) { return true; };
  auto sw = reduction::sweep_mu_family(7, 3, 6, mpz_class(1000000000),
                                       mpq_class(13), real::golden_ratio(),
                                       opts);
  bool found = false;
  for (long d : sw.exceptions) found = found || d == 4;
  CHECK(found);
  for (const auto& row : sw.rows) {
    if (row.d == 4) {
      CHECK(row.status == reduction::StepStatus::NonPositive);
      CHECK(row.eps_hi <= 0);
    }
  }
}

TEST_CASE("sweep is deterministic") {
  reduction::SweepOptions opts;
  opts.eps_floor = 0;
  opts.exception_ok = [](long) { return true; };
  auto a = reduction::sweep_mu_family(7, 3, 12, mpz_class(100000),
                                      mpq_class(13), real::golden_ratio(),
                                      opts);
  auto b = reduction::sweep_mu_family(7, 3, 12, mpz_class(100000),
                                      mpq_class(13), real::golden_ratio(),
                                      opts);
  CHECK(a.q == b.q);
  CHECK(a.exceptions == b.exceptions);
  CHECK(a.eps_min_lo == b.eps_min_lo);
  CHECK(a.eps_max_hi == b.eps_max_hi);
  CHECK(a.omega_cap == b.omega_cap);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].eps_lo == b.rows[i].eps_lo);
    CHECK(a.rows[i].eps_hi == b.rows[i].eps_hi);
  }
}

TEST_CASE("step preconditions") {
  CertifiedReal gamma =
      CertifiedReal::certify(real::sqrt_(lit(2)), real::pow10(-40));
  CHECK_THROWS_AS(
      reduction::dujella_petho_step(gamma, gamma, mpq_class(1), lit(2),
                                    mpz_class(100), mpz_class(50)),
      DomainError);  // q <= 6M
  CHECK_THROWS_AS(
      reduction::dujella_petho_step(gamma, gamma, mpq_class(-1), lit(2),
                                    mpz_class(1), mpz_class(100)),
      DomainError);  // A <= 0
}
