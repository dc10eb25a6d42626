#include "fibdiff/realnum.hpp"

#include <mpfr.h>

#include <utility>

#include "fibdiff/errors.hpp"

namespace fibdiff::real {
namespace {

// Signals that the current working precision cannot resolve a partial
// operation (log/sqrt sign, division through zero). Caught by the ladder.
struct RetryPrecision {};

mpq_class to_rational(mpfr_srcptr f) {
  if (mpfr_zero_p(f)) return mpq_class(0);
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), f);
  mpq_class q(mant);
  if (e >= 0) {
    mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(),
                 static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(),
                 static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

// Outward-rounded interval with MPFR endpoints.
class Ival {
 public:
  explicit Ival(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
  }
  Ival(Ival&& other) noexcept {
    mpfr_init2(lo_, mpfr_get_prec(other.lo_));
    mpfr_init2(hi_, mpfr_get_prec(other.hi_));
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }
  Ival(const Ival&) = delete;
  Ival& operator=(const Ival&) = delete;
  ~Ival() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  mpfr_ptr lo() { return lo_; }
  mpfr_ptr hi() { return hi_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  bool finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
  int sign_lo() const { return mpfr_sgn(lo_); }
  int sign_hi() const { return mpfr_sgn(hi_); }

 private:
  mpfr_t lo_, hi_;
};

Ival make_point(const mpq_class& v, mpfr_prec_t prec) {
  Ival r(prec);
  mpfr_set_q(r.lo(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi(), v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Ival eval(const Expr& e, mpfr_prec_t prec);

Ival eval_add(const Ival& a, const Ival& b, mpfr_prec_t prec) {
  Ival r(prec);
  mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
  return r;
}

Ival eval_sub(const Ival& a, const Ival& b, mpfr_prec_t prec) {
  Ival r(prec);
  mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
  mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
  return r;
}

Ival eval_mul(const Ival& a, const Ival& b, mpfr_prec_t prec) {
  Ival r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  // lo: minimum of the four products rounded down.
  mpfr_mul(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_mul(t, a.lo(), b.hi(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
  mpfr_mul(t, a.hi(), b.lo(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
  mpfr_mul(t, a.hi(), b.hi(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
  // hi: maximum rounded up.
  mpfr_mul(r.hi(), a.lo(), b.lo(), MPFR_RNDU);
  mpfr_mul(t, a.lo(), b.hi(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
  mpfr_mul(t, a.hi(), b.lo(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
  mpfr_mul(t, a.hi(), b.hi(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

Ival eval_div(const Ival& a, const Ival& b, mpfr_prec_t prec) {
  if (b.sign_lo() <= 0 && b.sign_hi() >= 0) throw RetryPrecision{};
  Ival r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_div(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_div(t, a.lo(), b.hi(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
  mpfr_div(t, a.hi(), b.lo(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
  mpfr_div(t, a.hi(), b.hi(), MPFR_RNDD);
  mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
  mpfr_div(r.hi(), a.lo(), b.lo(), MPFR_RNDU);
  mpfr_div(t, a.lo(), b.hi(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
  mpfr_div(t, a.hi(), b.lo(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
  mpfr_div(t, a.hi(), b.hi(), MPFR_RNDU);
  mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

Ival eval_pow(const Ival& a, long k, mpfr_prec_t prec) {
  Ival r(prec);
  if (k == 0) {
    mpfr_set_ui(r.lo(), 1, MPFR_RNDD);
    mpfr_set_ui(r.hi(), 1, MPFR_RNDU);
    return r;
  }
  if (k < 0) {
    if (a.sign_lo() <= 0 && a.sign_hi() >= 0) throw RetryPrecision{};
    Ival p = eval_pow(a, -k, prec);
    Ival one(prec);
    mpfr_set_ui(one.lo(), 1, MPFR_RNDD);
    mpfr_set_ui(one.hi(), 1, MPFR_RNDU);
    return eval_div(one, p, prec);
  }
  const bool even = (k % 2 == 0);
  if (a.sign_lo() >= 0) {  // monotone increasing
    mpfr_pow_si(r.lo(), a.lo(), k, MPFR_RNDD);
    mpfr_pow_si(r.hi(), a.hi(), k, MPFR_RNDU);
  } else if (a.sign_hi() <= 0) {
    if (even) {  // monotone decreasing on the negatives
      mpfr_pow_si(r.lo(), a.hi(), k, MPFR_RNDD);
      mpfr_pow_si(r.hi(), a.lo(), k, MPFR_RNDU);
    } else {
      mpfr_pow_si(r.lo(), a.lo(), k, MPFR_RNDD);
      mpfr_pow_si(r.hi(), a.hi(), k, MPFR_RNDU);
    }
  } else if (even) {  // straddles zero
    mpfr_set_ui(r.lo(), 0, MPFR_RNDD);
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_pow_si(r.hi(), a.hi(), k, MPFR_RNDU);
    mpfr_pow_si(t, a.lo(), k, MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_clear(t);
  } else {
    mpfr_pow_si(r.lo(), a.lo(), k, MPFR_RNDD);
    mpfr_pow_si(r.hi(), a.hi(), k, MPFR_RNDU);
  }
  return r;
}

Ival eval(const Expr& e, mpfr_prec_t prec) {
  switch (e.op()) {
    case ExprOp::Literal:
      return make_point(e.value(), prec);
    case ExprOp::Add:
      return eval_add(eval(*e.left(), prec), eval(*e.right(), prec), prec);
    case ExprOp::Sub:
      return eval_sub(eval(*e.left(), prec), eval(*e.right(), prec), prec);
    case ExprOp::Mul:
      return eval_mul(eval(*e.left(), prec), eval(*e.right(), prec), prec);
    case ExprOp::Div:
      return eval_div(eval(*e.left(), prec), eval(*e.right(), prec), prec);
    case ExprOp::Neg: {
      Ival a = eval(*e.left(), prec);
      Ival r(prec);
      mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
      mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
      return r;
    }
    case ExprOp::Abs: {
      Ival a = eval(*e.left(), prec);
      Ival r(prec);
      if (a.sign_lo() >= 0) {
        mpfr_set(r.lo(), a.lo(), MPFR_RNDD);
        mpfr_set(r.hi(), a.hi(), MPFR_RNDU);
      } else if (a.sign_hi() <= 0) {
        mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
        mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
      } else {
        mpfr_set_ui(r.lo(), 0, MPFR_RNDD);
        mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
        mpfr_max(r.hi(), r.hi(), a.hi(), MPFR_RNDU);
      }
      return r;
    }
    case ExprOp::Sqrt: {
      Ival a = eval(*e.left(), prec);
      if (a.sign_lo() < 0) throw RetryPrecision{};
      Ival r(prec);
      mpfr_sqrt(r.lo(), a.lo(), MPFR_RNDD);
      mpfr_sqrt(r.hi(), a.hi(), MPFR_RNDU);
      return r;
    }
    case ExprOp::Log: {
      Ival a = eval(*e.left(), prec);
      if (a.sign_lo() <= 0) throw RetryPrecision{};
      Ival r(prec);
      mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
      mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
      return r;
    }
    case ExprOp::Exp: {
      Ival a = eval(*e.left(), prec);
      Ival r(prec);
      mpfr_exp(r.lo(), a.lo(), MPFR_RNDD);
      mpfr_exp(r.hi(), a.hi(), MPFR_RNDU);
      return r;
    }
    case ExprOp::PowInt:
      return eval_pow(eval(*e.left(), prec), e.exponent(), prec);
  }
  throw DomainError("eval: unknown expression node");
}

}  // namespace

bool eval_interval(const ExprPtr& e, int prec_bits, mpq_class& lo,
                   mpq_class& hi) {
  if (!e) throw DomainError("eval_interval: null expression");
  try {
    Ival r = eval(*e, prec_bits);
    if (!r.finite()) return false;
    lo = to_rational(r.lo());
    hi = to_rational(r.hi());
    return true;
  } catch (const RetryPrecision&) {
    return false;
  }
}

CertifiedReal CertifiedReal::certify(ExprPtr source,
                                     const mpq_class& target_width,
                                     PrecisionLadder ladder) {
  if (target_width <= 0) throw DomainError("certify: target width must be > 0");
  CertifiedReal out;
  out.src_ = std::move(source);
  out.ladder_ = ladder;
  for (int prec = ladder.start_bits; prec <= ladder.max_bits; prec *= 2) {
    mpq_class lo, hi;
    if (!eval_interval(out.src_, prec, lo, hi)) continue;
    if (hi - lo <= target_width) {
      out.lo_ = std::move(lo);
      out.hi_ = std::move(hi);
      out.prec_bits_ = prec;
      return out;
    }
  }
  throw PrecisionExhausted("certify: target width not reached at " +
                           std::to_string(ladder.max_bits) + " bits");
}

CertifiedReal CertifiedReal::refined(const mpq_class& target_width) const {
  if (!valid()) throw DomainError("refined: uninitialized value");
  if (width() <= target_width) return *this;
  return certify(src_, target_width, ladder_);
}

Ordering compare(const ExprPtr& x, const ExprPtr& y, PrecisionLadder ladder) {
  if (!x || !y) throw DomainError("compare: null expression");
  if (x == y) return Ordering::SameSource;
  auto ex = exact_value(x);
  auto ey = exact_value(y);
  if (ex && ey) {
    if (*ex < *ey) return Ordering::Less;
    if (*ex > *ey) return Ordering::Greater;
    return Ordering::Equal;
  }
  for (int prec = ladder.start_bits; prec <= ladder.max_bits; prec *= 2) {
    mpq_class xlo, xhi, ylo, yhi;
    if (!eval_interval(x, prec, xlo, xhi)) continue;
    if (!eval_interval(y, prec, ylo, yhi)) continue;
    if (xhi < ylo) return Ordering::Less;
    if (xlo > yhi) return Ordering::Greater;
  }
  return Ordering::Unresolved;
}

Ordering compare(const ExprPtr& x, const mpq_class& y, PrecisionLadder ladder) {
  return compare(x, lit(y), ladder);
}

Ordering compare(const CertifiedReal& x, const CertifiedReal& y) {
  if (x.source() == y.source()) return Ordering::SameSource;
  if (x.upper() < y.lower()) return Ordering::Less;
  if (x.lower() > y.upper()) return Ordering::Greater;
  return compare(x.source(), y.source(), x.ladder());
}

SignedDistance nearest_int_distance(const CertifiedReal& x) {
  if (!x.valid()) throw DomainError("nearest_int_distance: uninitialized value");
  const PrecisionLadder ladder = x.ladder();
  for (int prec = ladder.start_bits; prec <= ladder.max_bits; prec *= 2) {
    mpq_class lo, hi;
    if (!eval_interval(x.source(), prec, lo, hi)) continue;
    if (hi - lo >= mpq_class(1, 2)) continue;
    // Nearest integer to the midpoint, rounding half down (either choice
    // works; the bracket test below decides admissibility).
    mpq_class mid = (lo + hi) / 2 + mpq_class(1, 2);
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), mid.get_num_mpz_t(), mid.get_den_mpz_t());
    if (!(lo > z - mpq_class(1, 2) && hi < z + mpq_class(1, 2))) continue;
    mpq_class dlo, dhi;
    if (lo >= z) {
      dlo = lo - z;
      dhi = hi - z;
    } else if (hi <= z) {
      dlo = z - hi;
      dhi = z - lo;
    } else {
      dlo = 0;
      mpq_class d1 = hi - z, d2 = z - lo;
      dhi = d1 > d2 ? d1 : d2;
    }
    ExprPtr dist_src = abs_(x.source() - lit(z));
    mpq_class target = dhi - dlo;
    if (target == 0) target = mpq_class(1, 1000000);
    CertifiedReal value = CertifiedReal::certify(dist_src, target, ladder);
    // The bracket above guarantees the true distance is < 1/2; tighten the
    // certified interval until its upper endpoint agrees.
    while (value.upper() >= mpq_class(1, 2)) {
      value = value.refined(value.width() / 2);
    }
    return SignedDistance{value, z};
  }
  throw PrecisionExhausted("nearest_int_distance: nearest integer ambiguous");
}

ExprPtr sqrt5() {
  static const ExprPtr e = sqrt_(lit(5));
  return e;
}

ExprPtr golden_ratio() {
  static const ExprPtr e = (lit(1) + sqrt5()) / lit(2);
  return e;
}

ExprPtr golden_conjugate() {
  static const ExprPtr e = (lit(1) - sqrt5()) / lit(2);
  return e;
}

ExprPtr log_golden_ratio() {
  static const ExprPtr e = log_(golden_ratio());
  return e;
}

mpq_class pow10(int k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
  return k < 0 ? mpq_class(1, p) : mpq_class(p);
}

}  // namespace fibdiff::real
