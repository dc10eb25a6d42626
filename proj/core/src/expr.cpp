#include "fibdiff/expr.hpp"

#include <utility>

namespace fibdiff::real {

ExprPtr Expr::literal(mpq_class v) {
  v.canonicalize();
  auto e = std::shared_ptr<Expr>(new Expr());
  e->op_ = ExprOp::Literal;
  e->value_ = std::move(v);
  return e;
}

ExprPtr Expr::unary(ExprOp op, ExprPtr x) {
  auto e = std::shared_ptr<Expr>(new Expr());
  e->op_ = op;
  e->left_ = std::move(x);
  return e;
}

ExprPtr Expr::binary(ExprOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::shared_ptr<Expr>(new Expr());
  e->op_ = op;
  e->left_ = std::move(lhs);
  e->right_ = std::move(rhs);
  return e;
}

ExprPtr Expr::power(ExprPtr base, long exponent) {
  auto e = std::shared_ptr<Expr>(new Expr());
  e->op_ = ExprOp::PowInt;
  e->left_ = std::move(base);
  e->exponent_ = exponent;
  return e;
}

ExprPtr lit(long v) { return Expr::literal(mpq_class(v)); }
ExprPtr lit(const mpz_class& v) { return Expr::literal(mpq_class(v)); }
ExprPtr lit(const mpq_class& v) { return Expr::literal(v); }

ExprPtr operator+(ExprPtr a, ExprPtr b) {
  return Expr::binary(ExprOp::Add, std::move(a), std::move(b));
}
ExprPtr operator-(ExprPtr a, ExprPtr b) {
  return Expr::binary(ExprOp::Sub, std::move(a), std::move(b));
}
ExprPtr operator*(ExprPtr a, ExprPtr b) {
  return Expr::binary(ExprOp::Mul, std::move(a), std::move(b));
}
ExprPtr operator/(ExprPtr a, ExprPtr b) {
  return Expr::binary(ExprOp::Div, std::move(a), std::move(b));
}
ExprPtr neg(ExprPtr x) { return Expr::unary(ExprOp::Neg, std::move(x)); }
ExprPtr abs_(ExprPtr x) { return Expr::unary(ExprOp::Abs, std::move(x)); }
ExprPtr sqrt_(ExprPtr x) { return Expr::unary(ExprOp::Sqrt, std::move(x)); }
ExprPtr log_(ExprPtr x) { return Expr::unary(ExprOp::Log, std::move(x)); }
ExprPtr exp_(ExprPtr x) { return Expr::unary(ExprOp::Exp, std::move(x)); }
ExprPtr pow_i(ExprPtr base, long exponent) {
  return Expr::power(std::move(base), exponent);
}

std::optional<mpq_class> exact_value(const ExprPtr& e) {
  if (!e) return std::nullopt;
  switch (e->op()) {
    case ExprOp::Literal:
      return e->value();
    case ExprOp::Add:
    case ExprOp::Sub:
    case ExprOp::Mul:
    case ExprOp::Div: {
      auto a = exact_value(e->left());
      auto b = exact_value(e->right());
      if (!a || !b) return std::nullopt;
      switch (e->op()) {
        case ExprOp::Add: return *a + *b;
        case ExprOp::Sub: return *a - *b;
        case ExprOp::Mul: return *a * *b;
        default:
          if (*b == 0) return std::nullopt;
          return *a / *b;
      }
    }
    case ExprOp::Neg: {
      auto a = exact_value(e->left());
      if (!a) return std::nullopt;
      return -*a;
    }
    case ExprOp::Abs: {
      auto a = exact_value(e->left());
      if (!a) return std::nullopt;
      return abs(*a);
    }
    case ExprOp::PowInt: {
      auto a = exact_value(e->left());
      if (!a) return std::nullopt;
      long k = e->exponent();
      if (k < 0 && *a == 0) return std::nullopt;
      mpq_class base = k < 0 ? mpq_class(1) / *a : *a;
      unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k);
      mpq_class num, den;
      mpz_pow_ui(num.get_num_mpz_t(), base.get_num_mpz_t(), n);
      mpz_pow_ui(num.get_den_mpz_t(), base.get_den_mpz_t(), n);
      num.canonicalize();
      return num;
    }
    case ExprOp::Sqrt:
    case ExprOp::Log:
    case ExprOp::Exp:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace fibdiff::real
