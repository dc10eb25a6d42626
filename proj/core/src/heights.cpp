#include "fibdiff/heights.hpp"

#include "fibdiff/errors.hpp"
#include "fibdiff/sequences.hpp"

namespace fibdiff::heights {

using real::abs_;
using real::CertifiedReal;
using real::ExprPtr;
using real::lit;
using real::log_;

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a + y.a, x.b + y.b};
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a - y.a, x.b - y.b};
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a};
}

QuadraticNumber inverse(const QuadraticNumber& x) {
  mpq_class norm = x.a * x.a - 5 * x.b * x.b;
  if (norm == 0) throw DomainError("inverse: zero element");
  return {x.a / norm, -x.b / norm};
}

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
  return x.a == y.a && x.b == y.b;
}

QuadraticNumber golden_power(long k) {
  // alpha^k = (L_k + F_k sqrt 5)/2, valid for all integers k via the
  // negative-index sign rules.
  mpq_class half(1, 2);
  return {mpq_class(seq::lucas(k)) * half, mpq_class(seq::fib(k)) * half};
}

QuadraticNumber eta3_exact(long d) {
  if (d < 1) throw DomainError("eta3_exact: requires d >= 1");
  QuadraticNumber one{1, 0};
  QuadraticNumber sqrt5{0, 1};
  return sqrt5 * inverse(one - golden_power(-d));
}

ExprPtr to_expr(const QuadraticNumber& x) {
  return lit(x.a) + lit(x.b) * real::sqrt5();
}

HeightBound height_rational(const mpq_class& r, const mpq_class& width) {
  mpq_class v = r;
  v.canonicalize();
  mpz_class num = abs(mpz_class(v.get_num()));
  mpz_class den = v.get_den();
  mpz_class top = num > den ? num : den;
  ExprPtr h = top == 1 ? lit(0) : log_(lit(top));
  return {CertifiedReal::certify(h, width), HeightKind::Exact};
}

namespace {

// log max(|x|, 1) as an expression, deciding the max by certified compare.
ExprPtr log_plus(const ExprPtr& x) {
  switch (real::compare(abs_(x), mpq_class(1))) {
    case real::Ordering::Greater:
      return log_(abs_(x));
    case real::Ordering::Less:
    case real::Ordering::Equal:
      return lit(0);
    default:
      throw PrecisionExhausted("height: |conjugate| vs 1 unresolved");
  }
}

}  // namespace

HeightBound height_quadratic(const QuadraticNumber& x, const mpq_class& width) {
  if (x.is_rational()) {
    throw DomainError("height_quadratic: rational input, use height_rational");
  }
  // Minimal polynomial of a + b sqrt5 over Q: X^2 - 2a X + (a^2 - 5 b^2).
  mpq_class c1 = -2 * x.a;
  mpq_class c2 = x.a * x.a - 5 * x.b * x.b;
  c1.canonicalize();
  c2.canonicalize();
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), c1.get_den().get_mpz_t(), c2.get_den().get_mpz_t());
  mpz_class a0 = den;
  mpz_class a1 = mpz_class(c1.get_num()) * (den / c1.get_den());
  mpz_class a2 = mpz_class(c2.get_num()) * (den / c2.get_den());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a0.get_mpz_t(), a1.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a2.get_mpz_t());
  a0 /= g;  // a0 > 0 since den > 0

  ExprPtr root1 = to_expr(x);
  ExprPtr root2 = to_expr(x.conjugate());
  ExprPtr h = (log_(lit(a0)) + log_plus(root1) + log_plus(root2)) / lit(2);
  if (a0 == 1) h = (log_plus(root1) + log_plus(root2)) / lit(2);
  return {CertifiedReal::certify(h, width), HeightKind::Exact};
}

HeightBound height_eta3_bound(long d, const mpq_class& width) {
  if (d < 1) throw DomainError("height_eta3_bound: requires d >= 1");
  ExprPtr h =
      (log_(lit(20)) + lit(d) * real::log_golden_ratio()) / lit(2);
  return {CertifiedReal::certify(h, width), HeightKind::UpperBound};
}

real::ExprPtr abs_log_eta3_bound(long d) {
  if (d < 1) throw DomainError("abs_log_eta3_bound: requires d >= 1");
  return log_(lit(5)) + lit(d) * real::log_golden_ratio();
}

}  // namespace fibdiff::heights
