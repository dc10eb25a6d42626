#ifndef FIBDIFF_REALNUM_HPP
#define FIBDIFF_REALNUM_HPP

#include <gmpxx.h>

#include "fibdiff/expr.hpp"

namespace fibdiff::real {

// Working-precision schedule: start at start_bits, double until the target
// width is met, give up at max_bits.
struct PrecisionLadder {
  int start_bits = 128;
  int max_bits = 16384;
};

// An interval [lo, hi] of exact dyadic rationals guaranteed to contain the
// true value of `source`. Immutable; refinement returns a new value.
class CertifiedReal {
 public:
  CertifiedReal() = default;

  // Evaluates `source` with outward rounding until width <= target_width.
  // Throws PrecisionExhausted if the ladder tops out first.
  static CertifiedReal certify(ExprPtr source, const mpq_class& target_width,
                               PrecisionLadder ladder = {});

  CertifiedReal refined(const mpq_class& target_width) const;

  bool valid() const { return src_ != nullptr; }
  const mpq_class& lower() const { return lo_; }
  const mpq_class& upper() const { return hi_; }
  mpq_class width() const { return hi_ - lo_; }
  mpq_class midpoint() const { return (lo_ + hi_) / 2; }
  bool contains(const mpq_class& v) const { return lo_ <= v && v <= hi_; }
  const ExprPtr& source() const { return src_; }
  int precision_bits() const { return prec_bits_; }
  const PrecisionLadder& ladder() const { return ladder_; }

 private:
  ExprPtr src_;
  mpq_class lo_, hi_;
  int prec_bits_ = 0;
  PrecisionLadder ladder_;
};

enum class Ordering {
  Less,
  Equal,       // only certified through exact rational evaluation
  Greater,
  SameSource,  // identical expression trees: equal, flagged
  Unresolved,  // intervals still overlap at the precision cap
};

Ordering compare(const CertifiedReal& x, const CertifiedReal& y);
Ordering compare(const ExprPtr& x, const ExprPtr& y, PrecisionLadder ladder = {});
Ordering compare(const ExprPtr& x, const mpq_class& y, PrecisionLadder ladder = {});

// Distance from a real number to its nearest integer, with the integer.
struct SignedDistance {
  CertifiedReal value;  // interval for ||x||, entirely within [0, 1/2]
  mpz_class nearest;
};

// Refines x until the nearest integer is unambiguous (interval strictly
// inside (z - 1/2, z + 1/2)). Throws PrecisionExhausted for half-integers.
SignedDistance nearest_int_distance(const CertifiedReal& x);

// Raw interval evaluation at a fixed precision. Returns false when the
// precision does not resolve a partial operation (log/sqrt argument sign,
// division through zero); out parameters are untouched in that case.
bool eval_interval(const ExprPtr& e, int prec_bits, mpq_class& lo, mpq_class& hi);

// Shared constants of the golden-ratio world.
ExprPtr sqrt5();            // sqrt(5)
ExprPtr golden_ratio();     // (1 + sqrt 5) / 2
ExprPtr golden_conjugate(); // (1 - sqrt 5) / 2
ExprPtr log_golden_ratio();

// 10^-k as an exact rational, for width targets.
mpq_class pow10(int k);

}  // namespace fibdiff::real

#endif
