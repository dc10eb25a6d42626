#ifndef FIBDIFF_EXPR_HPP
#define FIBDIFF_EXPR_HPP

#include <gmpxx.h>

#include <memory>
#include <optional>

namespace fibdiff::real {

// Re-evaluation recipe for a real constant. Every certified value keeps its
// expression so downstream consumers can demand more precision later.
class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprOp {
  Literal,  // exact rational
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Abs,
  Sqrt,
  Log,
  Exp,
  PowInt,  // integer power of the single operand
};

class Expr {
 public:
  static ExprPtr literal(mpq_class v);
  static ExprPtr unary(ExprOp op, ExprPtr x);
  static ExprPtr binary(ExprOp op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr power(ExprPtr base, long exponent);

  ExprOp op() const { return op_; }
  const mpq_class& value() const { return value_; }
  long exponent() const { return exponent_; }
  const ExprPtr& left() const { return left_; }
  const ExprPtr& right() const { return right_; }

 private:
  Expr() = default;
  ExprOp op_ = ExprOp::Literal;
  mpq_class value_;
  long exponent_ = 0;
  ExprPtr left_, right_;
};

ExprPtr lit(long v);
ExprPtr lit(const mpz_class& v);
ExprPtr lit(const mpq_class& v);

ExprPtr operator+(ExprPtr a, ExprPtr b);
ExprPtr operator-(ExprPtr a, ExprPtr b);
ExprPtr operator*(ExprPtr a, ExprPtr b);
ExprPtr operator/(ExprPtr a, ExprPtr b);
ExprPtr neg(ExprPtr x);
ExprPtr abs_(ExprPtr x);
ExprPtr sqrt_(ExprPtr x);
ExprPtr log_(ExprPtr x);
ExprPtr exp_(ExprPtr x);
ExprPtr pow_i(ExprPtr base, long exponent);

// Exact rational value of a tree built only from rational-closed operations.
// nullopt when the tree contains sqrt/log/exp or divides by zero.
std::optional<mpq_class> exact_value(const ExprPtr& e);

}  // namespace fibdiff::real

#endif
