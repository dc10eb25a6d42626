#ifndef FIBDIFF_MATVEEV_HPP
#define FIBDIFF_MATVEEV_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "fibdiff/realnum.hpp"

namespace fibdiff::matveev {

// One algebraic number of an instance: the chosen constant A_i together with
// the bounds it must dominate (D h(eta_i) and |log eta_i|, as expressions).
struct LogNumber {
  real::ExprPtr a_constant;
  real::ExprPtr height;   // h(eta_i), or an upper bound on it
  real::ExprPtr abs_log;  // |log eta_i|, or an upper bound on it
};

struct MatveevInstance {
  int log_count = 0;       // t
  int field_degree = 0;    // D
  mpz_class exponent_max;  // B
  std::vector<LogNumber> numbers;
  // Why Gamma != 0: one of the two finite case patterns of the proofs.
  std::string nonzero_witness;
};

// Throws DomainError unless t >= 2, D >= 1, B >= 3, and every
// A_i >= max{D h(eta_i), |log eta_i|, 0.16}.
void validate(const MatveevInstance& inst);

// 1.4 * 30^{t+3} * t^{4.5} * D^2 * (1 + log D) * prod(a_parts); the pieces of
// the lower-bound exponent that do not involve B.
real::CertifiedReal coefficient(int t, int degree,
                                const std::vector<real::ExprPtr>& a_parts,
                                const mpq_class& relative_width = real::pow10(-9));

// The full (negated) exponent including the (1 + log B) factor.
real::CertifiedReal matveev_log_bound(const MatveevInstance& inst);

enum class BoundStage { NmBound, NAbsolute, NAfterReduction };

struct BoundChain {
  BoundStage stage = BoundStage::NmBound;
  real::CertifiedReal coefficient;
  std::optional<mpz_class> resulting_cap;
};

// Round-A instance for F_n - F_m = p^a: certified K with
// (n - m) log alpha - log 4 < K (1 + log n). a_constants has size 3.
BoundChain derive_nm_inequality(long p,
                                const std::vector<real::ExprPtr>& a_constants,
                                const mpz_class& b_max);

enum class GrowthKind { LogSquared, OnePlusLog };

// Least integer N such that n >= K f(log n) + additive for every n >= N,
// where f is (log n)^2 or (1 + log n). K is an exact upper bound.
mpz_class solve_self_referential(GrowthKind kind, const mpq_class& k_upper,
                                 const mpq_class& additive = 0,
                                 real::PrecisionLadder ladder = {});

}  // namespace fibdiff::matveev

#endif
