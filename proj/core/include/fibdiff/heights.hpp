#ifndef FIBDIFF_HEIGHTS_HPP
#define FIBDIFF_HEIGHTS_HPP

#include <gmpxx.h>

#include "fibdiff/realnum.hpp"

namespace fibdiff::heights {

// Element a + b*sqrt(5) of Q(sqrt 5), exact rational coordinates.
struct QuadraticNumber {
  mpq_class a;
  mpq_class b;

  QuadraticNumber conjugate() const { return {a, -b}; }
  bool is_rational() const { return b == 0; }
};

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
QuadraticNumber inverse(const QuadraticNumber& x);
bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);

// Exact alpha^k with alpha the golden ratio; any integer k.
QuadraticNumber golden_power(long k);

// Exact sqrt(5) * (1 - alpha^{-d})^{-1}, d >= 1.
QuadraticNumber eta3_exact(long d);

real::ExprPtr to_expr(const QuadraticNumber& x);

enum class HeightKind { Exact, UpperBound };

struct HeightBound {
  real::CertifiedReal value;  // natural-log units
  HeightKind kind = HeightKind::Exact;
};

// h(p/q) = log max(|p|, q) for a rational in lowest terms.
HeightBound height_rational(const mpq_class& r,
                            const mpq_class& width = real::pow10(-20));

// Exact height of an irrational element of Q(sqrt 5) via its degree-2
// minimal polynomial over Z. Throws DomainError for rational input.
HeightBound height_quadratic(const QuadraticNumber& x,
                             const mpq_class& width = real::pow10(-20));

// Closed-form bound (1/2)(log 20 + d log alpha) for the height of
// sqrt(5)(1 - alpha^{-d})^{-1}, d >= 1.
HeightBound height_eta3_bound(long d,
                              const mpq_class& width = real::pow10(-20));

// Companion bound log 5 + d log alpha for |log eta3|.
real::ExprPtr abs_log_eta3_bound(long d);

}  // namespace fibdiff::heights

#endif
