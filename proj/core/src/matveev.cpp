#include "fibdiff/matveev.hpp"

#include "fibdiff/errors.hpp"

namespace fibdiff::matveev {

using real::CertifiedReal;
using real::compare;
using real::ExprPtr;
using real::lit;
using real::log_;
using real::Ordering;
using real::pow_i;
using real::sqrt_;

namespace {

void require_dominates(const ExprPtr& a, const ExprPtr& bound,
                       const char* what) {
  switch (compare(a, bound)) {
    case Ordering::Greater:
    case Ordering::Equal:
    case Ordering::SameSource:
      return;
    case Ordering::Less:
      throw DomainError(std::string("matveev: A_i below ") + what);
    case Ordering::Unresolved:
      throw PrecisionExhausted(std::string("matveev: A_i vs ") + what +
                               " unresolved");
  }
}

}  // namespace

void validate(const MatveevInstance& inst) {
  if (inst.log_count < 2) throw DomainError("matveev: t must be >= 2");
  if (inst.field_degree < 1) throw DomainError("matveev: D must be >= 1");
  if (inst.exponent_max < 3) throw DomainError("matveev: B must be >= 3");
  if (static_cast<int>(inst.numbers.size()) != inst.log_count) {
    throw DomainError("matveev: t does not match the number list");
  }
  if (inst.nonzero_witness.empty()) {
    throw DomainError("matveev: missing Gamma != 0 witness");
  }
  for (const auto& num : inst.numbers) {
    require_dominates(num.a_constant, lit(mpq_class(4, 25)), "0.16");
    require_dominates(num.a_constant,
                      lit(inst.field_degree) * num.height, "D h(eta)");
    require_dominates(num.a_constant, num.abs_log, "|log eta|");
  }
}

CertifiedReal coefficient(int t, int degree,
                          const std::vector<real::ExprPtr>& a_parts,
                          const mpq_class& relative_width) {
  if (t < 2 || degree < 1) throw DomainError("matveev: bad t or D");
  ExprPtr e = lit(mpq_class(7, 5)) * pow_i(lit(30), t + 3) *
              pow_i(lit(t), 4) * sqrt_(lit(t)) * pow_i(lit(degree), 2);
  if (degree > 1) e = e * (lit(1) + log_(lit(degree)));
  for (const auto& a : a_parts) e = e * a;
  CertifiedReal coarse = CertifiedReal::certify(e, mpq_class(1));
  return coarse.refined(coarse.upper() * relative_width);
}

CertifiedReal matveev_log_bound(const MatveevInstance& inst) {
  validate(inst);
  std::vector<ExprPtr> parts;
  parts.reserve(inst.numbers.size());
  for (const auto& num : inst.numbers) parts.push_back(num.a_constant);
  CertifiedReal c = coefficient(inst.log_count, inst.field_degree, parts);
  ExprPtr full =
      c.source() * (lit(1) + log_(lit(inst.exponent_max)));
  CertifiedReal coarse = CertifiedReal::certify(full, mpq_class(1));
  return coarse.refined(coarse.upper() * real::pow10(-9));
}

BoundChain derive_nm_inequality(long p,
                                const std::vector<real::ExprPtr>& a_constants,
                                const mpz_class& b_max) {
  if (a_constants.size() != 3) {
    throw DomainError("derive_nm_inequality: expects three A constants");
  }
  MatveevInstance inst;
  inst.log_count = 3;
  inst.field_degree = 2;
  inst.exponent_max = b_max;
  // If Gamma_1 = 0 then alpha^{2n} = 5 p^{2a} would be rational.
  inst.nonzero_witness = "alpha-even-power-irrational";
  ExprPtr log_p = log_(lit(p));
  ExprPtr log_alpha = real::log_golden_ratio();
  ExprPtr log_sqrt5 = log_(real::sqrt5());
  inst.numbers = {
      {a_constants[0], log_p, log_p},
      {a_constants[1], log_alpha / lit(2), log_alpha},
      {a_constants[2], log_sqrt5, log_sqrt5},
  };
  validate(inst);
  BoundChain chain;
  chain.stage = BoundStage::NmBound;
  chain.coefficient = coefficient(3, 2, a_constants);
  return chain;
}

namespace {

// Certified test of n >= K f(log n) + additive.
bool dominates(const mpz_class& n, GrowthKind kind, const mpq_class& k_upper,
               const mpq_class& additive, const real::PrecisionLadder& ladder) {
  ExprPtr f = kind == GrowthKind::LogSquared
                  ? pow_i(log_(lit(n)), 2)
                  : lit(1) + log_(lit(n));
  ExprPtr rhs = lit(k_upper) * f + lit(additive);
  return compare(rhs, mpq_class(n), ladder) == Ordering::Less;
}

}  // namespace

mpz_class solve_self_referential(GrowthKind kind, const mpq_class& k_upper,
                                 const mpq_class& additive,
                                 real::PrecisionLadder ladder) {
  if (k_upper <= 0) throw DomainError("solve_self_referential: K must be > 0");
  // n / f(log n) is monotone for n >= 16, so the predicate flips once there.
  mpz_class lo = 16;
  if (dominates(lo, kind, k_upper, additive, ladder)) {
    while (lo > 1 && dominates(lo - 1, kind, k_upper, additive, ladder)) --lo;
    return lo;
  }
  mpz_class hi = 32;
  const mpz_class limit = mpz_class(1) << 2048;
  while (!dominates(hi, kind, k_upper, additive, ladder)) {
    hi *= 2;
    if (hi > limit) {
      throw PrecisionExhausted("solve_self_referential: no crossing found");
    }
  }
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (dominates(mid, kind, k_upper, additive, ladder)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace fibdiff::matveev
