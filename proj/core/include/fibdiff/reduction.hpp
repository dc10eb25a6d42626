#ifndef FIBDIFF_REDUCTION_HPP
#define FIBDIFF_REDUCTION_HPP

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <vector>

#include "fibdiff/realnum.hpp"

namespace fibdiff::reduction {

struct ContinuedFraction {
  std::vector<mpz_class> terms;  // certified partial quotients a_0, a_1, ...
  std::vector<std::pair<mpz_class, mpz_class>> convergents;  // (p_k, q_k)
  std::size_t certified_through = 0;  // every index <= this is guaranteed
};

// Certified partial quotients of an irrational x until some q_k > q_min,
// plus at least `extra` further convergents. Terms are the common prefix of
// the endpoint expansions at a precision high enough to separate them.
// Throws DomainError for exactly-rational sources.
ContinuedFraction cf_expand(const real::CertifiedReal& x,
                            const mpz_class& q_min, std::size_t extra = 0);

// One Dujella-Petho application: the data and, when epsilon > 0 certifies,
// the derived cap on omega.
struct ReductionInstance {
  real::CertifiedReal gamma;
  real::CertifiedReal mu;
  mpq_class big_a;      // A > 0
  real::ExprPtr big_b;  // B > 1
  mpz_class m_cap;      // M
  mpz_class q;
  real::CertifiedReal epsilon;    // ||mu q|| - M ||gamma q||
  real::CertifiedReal threshold;  // log(A q / eps_lo) / log B
  std::optional<long> omega_cap;  // ceil(threshold); no solution has
                                  // omega >= omega_cap
};

enum class StepStatus {
  Certified,    // epsilon > 0 certified, omega_cap set
  NonPositive,  // epsilon <= 0 certified: retry with the next convergent
  Unresolved,   // sign not resolvable at the precision cap
};

struct StepResult {
  StepStatus status = StepStatus::Unresolved;
  ReductionInstance instance;
};

// Requires q > 6M, A > 0, B > 1 (caller-established).
StepResult dujella_petho_step(const real::CertifiedReal& gamma,
                              const real::CertifiedReal& mu,
                              const mpq_class& big_a, real::ExprPtr big_b,
                              const mpz_class& m_cap, const mpz_class& q,
                              real::PrecisionLadder ladder = {});

// Walks convergents with q > 6M, retrying on NonPositive/Unresolved, up to
// max_attempts. Throws StageError when no convergent certifies.
StepResult apply_reduction(const real::CertifiedReal& gamma,
                           const real::CertifiedReal& mu,
                           const mpq_class& big_a, real::ExprPtr big_b,
                           const mpz_class& m_cap,
                           const ContinuedFraction& cf,
                           int max_attempts = 10,
                           real::PrecisionLadder ladder = {});

struct SweepRow {
  long d = 0;
  StepStatus status = StepStatus::Unresolved;
  mpq_class eps_lo, eps_hi;  // meaningful unless Unresolved
};

struct SweepResult {
  mpz_class q;
  std::vector<long> exceptions;  // d with non-positive or unresolved epsilon
  mpq_class eps_min_lo;          // over the positive rows
  mpq_class eps_max_hi;
  real::CertifiedReal threshold;  // log(A q / eps_min_lo) / log B
  long omega_cap = 0;
  std::vector<SweepRow> rows;
  int convergent_attempts = 1;
};

struct SweepOptions {
  // A convergent is rejected when some positive epsilon falls below this
  // floor (the resulting cap would be needlessly weak) or when an exception
  // d is not acceptable to the caller.
  mpq_class eps_floor = mpq_class(1, 250);  // 0.004
  std::function<bool(long)> exception_ok;   // default: d == 4 or d even
  int max_attempts = 10;
  real::PrecisionLadder ladder = {};
};

// For each d in [d_lo, d_hi], mu_d = log(sqrt5 (1 - alpha^{-d})^{-1}) /
// log(alpha) tested against a fixed convergent denominator of
// gamma = log p / log alpha with q > 6M. Deterministic.
SweepResult sweep_mu_family(long p, long d_lo, long d_hi, const mpz_class& m_cap,
                            const mpq_class& big_a, real::ExprPtr big_b,
                            const SweepOptions& opts = {});

}  // namespace fibdiff::reduction

#endif
