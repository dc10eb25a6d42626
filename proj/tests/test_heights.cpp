#include <random>

#include "doctest.h"
#include "fibdiff/errors.hpp"
#include "fibdiff/heights.hpp"

using namespace fibdiff;
using heights::QuadraticNumber;
using real::compare;
using real::Ordering;

namespace {

double approx(const real::CertifiedReal& r) {
  return mpq_get_d(r.midpoint().get_mpq_t());
}

// max(|num|, den) of a canonicalized rational: exp(h(x)).
mpz_class big(mpq_class x) {
  x.canonicalize();
  mpz_class num = abs(mpz_class(x.get_num()));
  mpz_class den = x.get_den();
  return num > den ? num : den;
}

mpq_class random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-5000, 5000);
  std::uniform_int_distribution<long> den(1, 5000);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("quadratic arithmetic in Q(sqrt 5)") {
  QuadraticNumber alpha{mpq_class(1, 2), mpq_class(1, 2)};
  QuadraticNumber beta = alpha.conjugate();
  CHECK(alpha * beta == QuadraticNumber{-1, 0});          // norm
  CHECK(alpha + beta == QuadraticNumber{1, 0});           // trace
  CHECK(alpha * alpha == alpha + QuadraticNumber{1, 0});  // alpha^2=alpha+1
  CHECK(inverse(alpha) * alpha == QuadraticNumber{1, 0});
  CHECK_THROWS_AS(heights::inverse(QuadraticNumber{0, 0}), DomainError);
}

TEST_CASE("golden powers match the Fibonacci/Lucas closed form") {
  QuadraticNumber alpha{mpq_class(1, 2), mpq_class(1, 2)};
  QuadraticNumber acc{1, 0};
  for (long k = 0; k <= 30; ++k) {
    CHECK(heights::golden_power(k) == acc);
    acc = acc * alpha;
  }
  for (long k = 1; k <= 10; ++k) {
    CHECK(heights::golden_power(-k) * heights::golden_power(k) ==
          QuadraticNumber{1, 0});
  }
}

TEST_CASE("height of rationals") {
  auto h7 = heights::height_rational(7);
  CHECK(approx(h7.value) == doctest::Approx(1.94591).epsilon(1e-5));
  CHECK(h7.kind == heights::HeightKind::Exact);
  auto h13 = heights::height_rational(13);
  CHECK(approx(h13.value) == doctest::Approx(2.56494).epsilon(1e-5));
  auto h1 = heights::height_rational(1);
  CHECK(h1.value.contains(0));
  auto h_frac = heights::height_rational(mpq_class(-3, 8));
  CHECK(approx(h_frac.value) == doctest::Approx(2.0794415).epsilon(1e-6));
}

TEST_CASE("height of quadratic numbers") {
  QuadraticNumber alpha{mpq_class(1, 2), mpq_class(1, 2)};
  auto ha = heights::height_quadratic(alpha);
  CHECK(approx(ha.value) == doctest::Approx(0.2406059).epsilon(1e-5));
  auto h5 = heights::height_quadratic(QuadraticNumber{0, 1});  // sqrt 5
  CHECK(approx(h5.value) == doctest::Approx(0.8047190).epsilon(1e-5));
  CHECK_THROWS_AS(heights::height_quadratic(QuadraticNumber{3, 0}),
                  DomainError);
  // h(1 + sqrt5) = h(2 alpha) <= h(2) + h(alpha).
  auto h2a = heights::height_quadratic(QuadraticNumber{1, 1});
  double bound = std::log(2.0) + 0.24060591252662053;
  CHECK(approx(h2a.value) <= bound + 1e-9);
}

TEST_CASE("height inequalities (4), (5), (6) on random rationals") {
  std::mt19937 rng(424242);
  int done = 0;
  while (done < 100) {
    mpq_class x = random_rational(rng);
    mpq_class y = random_rational(rng);
    if (x == 0 || y == 0) continue;
    ++done;
    // Eq (4): h(x +- y) <= h(x) + h(y) + log 2, i.e. big(x+-y) <= 2 big(x) big(y).
    CHECK(big(x + y) <= 2 * big(x) * big(y));
    CHECK(big(x - y) <= 2 * big(x) * big(y));
    // Eq (5): h(x y^{+-1}) <= h(x) + h(y).
    CHECK(big(x * y) <= big(x) * big(y));
    CHECK(big(x / y) <= big(x) * big(y));
    // Eq (6): h(x^k) = |k| h(x).
    std::uniform_int_distribution<long> pick_k(-10, 10);
    long k = pick_k(rng);
    mpq_class xk = 1;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) xk *= x;
    if (k < 0) xk = 1 / xk;
    mpz_class expect;
    mpz_pow_ui(expect.get_mpz_t(), big(x).get_mpz_t(),
               static_cast<unsigned long>(k < 0 ? -k : k));
    CHECK(big(xk) == expect);
  }
}

TEST_CASE("eta3 exact height is dominated by the closed-form bound") {
  for (long d = 1; d <= 200; ++d) {
    QuadraticNumber eta = heights::eta3_exact(d);
    auto exact = heights::height_quadratic(eta, real::pow10(-15));
    auto bound = heights::height_eta3_bound(d, real::pow10(-15));
    CHECK(bound.kind == heights::HeightKind::UpperBound);
    CHECK(compare(exact.value, bound.value) != Ordering::Greater);
    CHECK(exact.value.lower() < bound.value.upper());
  }
}

TEST_CASE("eta3 exact value matches its defining expression") {
  for (long d : {1L, 2L, 3L, 4L, 10L, 161L}) {
    QuadraticNumber eta = heights::eta3_exact(d);
    // sqrt5 (1 - alpha^{-d})^{-1} rebuilt from interval arithmetic.
    real::ExprPtr direct =
        real::sqrt5() /
        (real::lit(1) - real::pow_i(real::golden_ratio(), -d));
    real::CertifiedReal lhs =
        real::CertifiedReal::certify(heights::to_expr(eta), real::pow10(-40));
    real::CertifiedReal rhs =
        real::CertifiedReal::certify(direct, real::pow10(-40));
    CHECK(lhs.lower() <= rhs.upper());
    CHECK(rhs.lower() <= lhs.upper());
  }
}

TEST_CASE("eta3 with d = 4 is exactly alpha squared") {
  CHECK(heights::eta3_exact(4) == heights::golden_power(2));
}
