#include "fibdiff/reduction.hpp"

#include <utility>

#include "fibdiff/errors.hpp"
#include "fibdiff/heights.hpp"

namespace fibdiff::reduction {

using real::CertifiedReal;
using real::compare;
using real::ExprPtr;
using real::lit;
using real::log_;
using real::Ordering;
using real::pow10;

namespace {

std::vector<mpz_class> cf_of_rational(mpq_class v, std::size_t max_terms) {
  std::vector<mpz_class> out;
  while (out.size() < max_terms) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), v.get_num().get_mpz_t(),
               v.get_den().get_mpz_t());
    out.push_back(fl);
    mpq_class frac = v - mpq_class(fl);
    if (frac == 0) break;
    v = mpq_class(1) / frac;
  }
  return out;
}

void append_convergents(ContinuedFraction& cf) {
  mpz_class p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  cf.convergents.clear();
  for (const auto& a : cf.terms) {
    mpz_class pk = a * p_prev + p_prev2;
    mpz_class qk = a * q_prev + q_prev2;
    cf.convergents.emplace_back(pk, qk);
    p_prev2 = p_prev;
    p_prev = pk;
    q_prev2 = q_prev;
    q_prev = qk;
  }
}

mpz_class ceil_of(const mpq_class& v) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return out;
}

}  // namespace

ContinuedFraction cf_expand(const CertifiedReal& x, const mpz_class& q_min,
                            std::size_t extra) {
  if (!x.valid()) throw DomainError("cf_expand: empty value");
  if (real::exact_value(x.source())) {
    throw DomainError("cf_expand: source is exactly rational");
  }
  constexpr std::size_t kMaxTerms = 2048;
  CertifiedReal cur = x;
  for (;;) {
    auto lo_cf = cf_of_rational(cur.lower(), kMaxTerms);
    auto hi_cf = cf_of_rational(cur.upper(), kMaxTerms);
    std::size_t common = 0;
    while (common < lo_cf.size() && common < hi_cf.size() &&
           lo_cf[common] == hi_cf[common]) {
      ++common;
    }
    // The common prefix minus its final term is certainly the start of the
    // true expansion; the last agreeing term may still grow under refinement.
    if (common > 1) {
      ContinuedFraction cf;
      cf.terms.assign(lo_cf.begin(), lo_cf.begin() + (common - 1));
      append_convergents(cf);
      cf.certified_through = cf.terms.size() - 1;
      std::size_t first_big = cf.convergents.size();
      for (std::size_t i = 0; i < cf.convergents.size(); ++i) {
        if (cf.convergents[i].second > q_min) {
          first_big = i;
          break;
        }
      }
      if (first_big + extra < cf.convergents.size()) return cf;
    }
    cur = cur.refined(cur.width() / 16);  // throws when the ladder tops out
  }
}

StepResult dujella_petho_step(const CertifiedReal& gamma,
                              const CertifiedReal& mu, const mpq_class& big_a,
                              ExprPtr big_b, const mpz_class& m_cap,
                              const mpz_class& q,
                              real::PrecisionLadder ladder) {
  if (big_a <= 0) throw DomainError("dujella_petho_step: A must be > 0");
  if (q <= 6 * m_cap) throw DomainError("dujella_petho_step: needs q > 6M");
  StepResult res;
  ReductionInstance& inst = res.instance;
  inst.gamma = gamma;
  inst.mu = mu;
  inst.big_a = big_a;
  inst.big_b = big_b;
  inst.m_cap = m_cap;
  inst.q = q;

  ExprPtr ql = lit(q);
  real::SignedDistance dist_g = real::nearest_int_distance(
      CertifiedReal::certify(gamma.source() * ql, mpq_class(1), ladder));
  real::SignedDistance dist_m = real::nearest_int_distance(
      CertifiedReal::certify(mu.source() * ql, mpq_class(1), ladder));
  ExprPtr eps_src =
      dist_m.value.source() - lit(m_cap) * dist_g.value.source();
  switch (compare(eps_src, mpq_class(0), ladder)) {
    case Ordering::Greater:
      break;
    case Ordering::Less:
    case Ordering::Equal:
      inst.epsilon = CertifiedReal::certify(eps_src, pow10(-9), ladder);
      res.status = StepStatus::NonPositive;
      return res;
    default:
      res.status = StepStatus::Unresolved;
      return res;
  }
  CertifiedReal eps = CertifiedReal::certify(eps_src, pow10(-9), ladder);
  while (eps.lower() <= 0) eps = eps.refined(eps.width() / 2);
  inst.epsilon = eps;

  mpq_class aq = big_a * mpq_class(q);
  ExprPtr thr_src = log_(lit(aq / eps.lower())) / log_(big_b);
  inst.threshold = CertifiedReal::certify(thr_src, pow10(-6), ladder);
  inst.omega_cap = ceil_of(inst.threshold.upper()).get_si();
  res.status = StepStatus::Certified;
  return res;
}

StepResult apply_reduction(const CertifiedReal& gamma, const CertifiedReal& mu,
                           const mpq_class& big_a, ExprPtr big_b,
                           const mpz_class& m_cap, const ContinuedFraction& cf,
                           int max_attempts, real::PrecisionLadder ladder) {
  mpz_class six_m = 6 * m_cap;
  int attempts = 0;
  for (const auto& [pk, qk] : cf.convergents) {
    if (qk <= six_m) continue;
    if (++attempts > max_attempts) break;
    StepResult r =
        dujella_petho_step(gamma, mu, big_a, big_b, m_cap, qk, ladder);
    if (r.status == StepStatus::Certified) return r;
  }
  throw StageError("reduction",
                   "no convergent certified a positive epsilon");
}

SweepResult sweep_mu_family(long p, long d_lo, long d_hi,
                            const mpz_class& m_cap, const mpq_class& big_a,
                            ExprPtr big_b, const SweepOptions& opts) {
  if (p < 2) throw DomainError("sweep_mu_family: p must be >= 2");
  if (d_lo < 1 || d_hi < d_lo) throw DomainError("sweep_mu_family: bad d range");
  std::function<bool(long)> exception_ok = opts.exception_ok;
  if (!exception_ok) exception_ok = [](long d) { return d % 2 == 0; };

  ExprPtr log_alpha = real::log_golden_ratio();
  ExprPtr gamma_src = log_(lit(p)) / log_alpha;
  CertifiedReal gamma =
      CertifiedReal::certify(gamma_src, pow10(-40), opts.ladder);
  ContinuedFraction cf = cf_expand(
      gamma, 6 * m_cap, static_cast<std::size_t>(opts.max_attempts) + 4);

  std::vector<ExprPtr> mu_srcs;
  mu_srcs.reserve(static_cast<std::size_t>(d_hi - d_lo + 1));
  for (long d = d_lo; d <= d_hi; ++d) {
    mu_srcs.push_back(log_(heights::to_expr(heights::eta3_exact(d))) /
                      log_alpha);
  }

  mpz_class six_m = 6 * m_cap;
  int attempts = 0;
  for (const auto& [pk, qk] : cf.convergents) {
    if (qk <= six_m) continue;
    if (++attempts > opts.max_attempts) break;
    SweepResult sr;
    sr.q = qk;
    sr.convergent_attempts = attempts;
    bool have_positive = false;
    bool rejected = false;
    for (long d = d_lo; d <= d_hi && !rejected; ++d) {
      CertifiedReal mu = CertifiedReal::certify(
          mu_srcs[static_cast<std::size_t>(d - d_lo)], mpq_class(1),
          opts.ladder);
      StepResult r =
          dujella_petho_step(gamma, mu, big_a, big_b, m_cap, qk, opts.ladder);
      SweepRow row;
      row.d = d;
      row.status = r.status;
      if (r.status != StepStatus::Unresolved) {
        row.eps_lo = r.instance.epsilon.lower();
        row.eps_hi = r.instance.epsilon.upper();
      }
      if (r.status == StepStatus::Certified) {
        if (!have_positive || row.eps_lo < sr.eps_min_lo) {
          sr.eps_min_lo = row.eps_lo;
        }
        if (!have_positive || row.eps_hi > sr.eps_max_hi) {
          sr.eps_max_hi = row.eps_hi;
        }
        have_positive = true;
        if (row.eps_lo < opts.eps_floor) rejected = true;
      } else {
        sr.exceptions.push_back(d);
        if (!exception_ok(d)) rejected = true;
      }
      sr.rows.push_back(row);
    }
    if (rejected || !have_positive) continue;
    mpq_class aq = big_a * mpq_class(sr.q);
    ExprPtr thr_src = log_(lit(aq / sr.eps_min_lo)) / log_(big_b);
    sr.threshold = CertifiedReal::certify(thr_src, pow10(-6), opts.ladder);
    sr.omega_cap = ceil_of(sr.threshold.upper()).get_si();
    return sr;
  }
  throw StageError("reduction-sweep",
                   "no convergent met the acceptance rule");
}

}  // namespace fibdiff::reduction
