#include "fibdiff/pipeline.hpp"

#include <algorithm>
#include <set>

#include "fibdiff/errors.hpp"
#include "fibdiff/heights.hpp"

namespace fibdiff::pipeline {

using real::CertifiedReal;
using real::compare;
using real::ExprPtr;
using real::lit;
using real::log_;
using real::Ordering;
using real::pow10;

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<seq::SolutionTriple> brute_force_search(long p, long cap) {
  if (cap < 10) throw DomainError("brute_force_search: cap must be >= 10");
  if (!is_prime(p)) throw DomainError("brute_force_search: p must be prime");
  std::vector<mpz_class> f(static_cast<std::size_t>(cap) + 1);
  for (long i = 0; i <= cap; ++i) f[static_cast<std::size_t>(i)] = seq::fib(i);
  std::vector<seq::SolutionTriple> out;
  for (long n = 2; n <= cap; ++n) {
    for (long m = 0; m < n; ++m) {
      mpz_class diff = f[static_cast<std::size_t>(n)] -
                       f[static_cast<std::size_t>(m)];
      if (diff < 1) continue;
      if (auto a = seq::prime_power_exponent(diff, p)) {
        out.push_back({n, m, *a});
      }
    }
  }
  return out;
}

namespace {

// All j >= 1 with F_j = p^a for some a >= 0, as (j, a) pairs.
std::vector<std::pair<long, unsigned long>> fib_prime_power_indices(long p) {
  std::vector<std::pair<long, unsigned long>> out;
  out.emplace_back(1, 0);  // F_1 = F_2 = 1 = p^0
  out.emplace_back(2, 0);
  for (long j = 3;; ++j) {  // a = 1 coincidences: F_j = p
    mpz_class v = seq::fib(j);
    if (v > p) break;
    if (v == p) out.emplace_back(j, 1);
  }
  const auto& facts = seq::perfect_power_facts();  // a >= 2
  for (std::size_t i = 0; i < facts.fib_indices.size(); ++i) {
    const mpz_class& v = facts.fib_values[i];
    if (v < 2) continue;
    if (auto a = seq::prime_power_exponent(v, p); a && *a >= 2) {
      out.emplace_back(facts.fib_indices[i], *a);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<SmallCaseSolution> small_case_split(long p) {
  if (!is_prime(p)) throw DomainError("small_case_split: p must be prime");
  std::vector<SmallCaseSolution> out;
  for (auto [j, a] : fib_prime_power_indices(p)) {
    // n - m = 1: F_{m+1} - F_m = F_{m-1}, so j = m - 1.
    if (long m = j + 1; m + 1 >= 2) {
      out.push_back({{m + 1, m, a}, "n-m=1"});
    }
    // n - m = 2: F_{m+2} - F_m = F_{m+1}, so j = m + 1.
    if (long m = j - 1; m >= 0) {
      out.push_back({{m + 2, m, a}, "n-m=2"});
    }
    // m = 0: F_n - F_0 = F_n, so j = n.
    if (j >= 2) {
      out.push_back({{j, 0, a}, "m=0"});
    }
  }
  return out;
}

ResidualCase eliminate_residual(long p, long d) {
  if (!is_prime(p)) throw DomainError("eliminate_residual: p must be prime");
  if (d < 3) throw DomainError("eliminate_residual: d must be >= 3");
  ResidualCase rc;
  rc.d = d;
  if (d == 4) {
    // F_{m+4} - F_m = L_{m+2}; with m > cap - 4 and a >= 2, L_{m+2} = p^a
    // would be a Lucas perfect power, but those are only 1 and 4.
    rc.rule = "d4-lucas-shift";
    rc.note = "F_{m+4} - F_m = L_{m+2}; L_{m+2} = p^a with a >= 2 "
              "contradicts the Lucas perfect-power list {1, 4}";
    return rc;
  }
  if (d % 2 != 0) {
    throw StageError("residual",
                     "unhandled residual d = " + std::to_string(d) +
                         " (odd; no elimination rule licensed)");
  }
  long half = d / 2;
  if (d % 4 == 0) {
    rc.rule = "fixed-fib-factor";
    rc.factor_index = half;
    rc.factor_value = seq::fib(half);
    rc.note = "F_n - F_m = F_" + std::to_string(half) +
              " * L_{(n+m)/2}; both factors of p^a must be p-powers";
  } else {
    rc.rule = "fixed-lucas-factor";
    rc.factor_index = half;
    rc.factor_value = seq::lucas(half);
    rc.note = "F_n - F_m = F_{(n+m)/2} * L_" + std::to_string(half) +
              "; both factors of p^a must be p-powers";
  }
  if (rc.factor_value < 2) {
    throw StageError("residual", "fixed factor degenerate for d = " +
                                     std::to_string(d));
  }
  if (seq::prime_power_exponent(rc.factor_value, p)) {
    throw StageError("residual",
                     "fixed factor is a p-power; rule inconclusive for d = " +
                         std::to_string(d));
  }
  return rc;
}

namespace {

CertifiedReal refined_relative(ExprPtr e, const mpq_class& rel,
                               const real::PrecisionLadder& ladder) {
  CertifiedReal coarse = CertifiedReal::certify(e, mpq_class(1), ladder);
  if (coarse.upper() <= 0) {
    throw DomainError("refined_relative: expected a positive quantity");
  }
  return coarse.refined(coarse.upper() * rel);
}

mpq_class decimal_mantissa(long mantissa, int exp10) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
  return mpq_class(mpz_class(mantissa) * scale);
}

void run_stages(const PipelineConfig& config, ProofCertificate& cert,
                std::string& stage) {
  const long p = config.prime;
  const long cap = config.search_cap;
  const real::PrecisionLadder ladder = config.ladder;

  stage = "config";
  if (!is_prime(p)) throw DomainError("pipeline: --prime must be prime");
  if (cap < 10) throw DomainError("pipeline: search cap must be >= 10");

  stage = "brute-force-search";
  cert.search_solutions = brute_force_search(p, cap);

  stage = "small-case-split";
  cert.small_case_solutions = small_case_split(p);
  // Any solution beyond the search cap has a >= 2: the smallest difference
  // F_n - F_{n-1} = F_{n-2} already exceeds p there.
  if (seq::fib(cap - 2) <= p) {
    throw StageError("small-case-split",
                     "search cap too small to confine the a <= 1 solutions");
  }
  cert.notes.push_back(
      "a <= 1 solutions are confined to n <= search_cap (F_{n-2} > p beyond "
      "it); the bound chain addresses a >= 2");

  stage = "matveev-chain";
  ExprPtr la = real::log_golden_ratio();
  mpq_class a1;
  if (p == 7) {
    a1 = mpq_class(39, 10);
  } else if (p == 13) {
    a1 = mpq_class(103, 20);
  } else {
    CertifiedReal two_log_p =
        CertifiedReal::certify(lit(2) * log_(lit(p)), pow10(-6), ladder);
    a1 = two_log_p.upper() + mpq_class(1, 100);
  }
  std::vector<ExprPtr> round_a = {lit(a1), lit(mpq_class(1, 2)),
                                  lit(mpq_class(33, 20))};
  matveev::BoundChain nm_chain = matveev::derive_nm_inequality(p, round_a, 3);
  CertifiedReal k11 = nm_chain.coefficient;
  cert.bound_chain.push_back({"linear-form-nm", nm_chain});
  cert.notes.push_back(
      "Gamma1 != 0 witness: alpha-even-power-irrational; Gamma2 != 0 "
      "witness: beta-power-collision");

  CertifiedReal k14 =
      matveev::coefficient(3, 2, {round_a[0], round_a[1]});
  cert.bound_chain.push_back(
      {"linear-form-n-per-a3",
       {matveev::BoundStage::NAbsolute, k14, std::nullopt}});
  cert.notes.push_back(
      "chain follows the displayed sqrt(5)/alpha^n < 3/alpha^n step "
      "verbatim (slack: sqrt(5) < 3)");

  // n log(alpha) - log(3) < K14 (1+log n)(log 80 + K11 (1+log n)), i.e.
  // n < c0 + c1 log n + c2 (log n)^2.
  ExprPtr prod = k14.source() * k11.source();
  ExprPtr log80 = log_(lit(80));
  mpq_class rel = pow10(-9);
  CertifiedReal c2 = refined_relative(prod / la, rel, ladder);
  CertifiedReal c1 = refined_relative(
      (lit(2) * prod + k14.source() * log80) / la, rel, ladder);
  CertifiedReal c0 = refined_relative(
      (prod + k14.source() * log80 + log_(lit(3))) / la, rel, ladder);
  CertifiedReal x0 =
      CertifiedReal::certify(log_(lit(cap + 1)), pow10(-9), ladder);
  mpq_class x0_lo = x0.lower();
  mpq_class needed =
      c0.upper() / (x0_lo * x0_lo) + c1.upper() / x0_lo + c2.upper();
  mpq_class k_abs;
  if (p == 7) {
    k_abs = decimal_mantissa(146212, 21);  // 1.46212e26
  } else if (p == 13) {
    k_abs = decimal_mantissa(155331, 21);  // 1.55331e26
  } else {
    k_abs = needed;
  }
  if (k_abs < needed) {
    throw StageError("matveev-chain",
                     "quadratic majorant fails domination at n > cap");
  }
  mpz_class cap_abs =
      matveev::solve_self_referential(matveev::GrowthKind::LogSquared, k_abs,
                                      0, ladder);
  cert.bound_chain.push_back(
      {"n-absolute",
       {matveev::BoundStage::NAbsolute,
        CertifiedReal::certify(lit(k_abs), k_abs * rel, ladder), cap_abs}});

  stage = "reduction-round-1";
  ExprPtr gamma_src = log_(lit(p)) / la;
  CertifiedReal gamma = CertifiedReal::certify(gamma_src, pow10(-40), ladder);
  CertifiedReal mu =
      CertifiedReal::certify(log_(real::sqrt5()) / la, pow10(-40), ladder);
  mpq_class big_a1(1663, 10);
  if (compare(lit(big_a1) * la, mpq_class(80), ladder) != Ordering::Greater) {
    throw StageError("reduction-round-1", "A = 166.3 fails A log(alpha) > 80");
  }
  reduction::ContinuedFraction cf =
      reduction::cf_expand(gamma, 6 * cap_abs, 14);
  reduction::StepResult r1 = reduction::apply_reduction(
      gamma, mu, big_a1, real::golden_ratio(), cap_abs, cf, 10, ladder);
  cert.reductions.push_back(r1.instance);
  long d_max = *r1.instance.omega_cap - 1;
  if (d_max < 3 || d_max > 10000) {
    throw StageError("reduction-round-1",
                     "round-1 cap out of the workable range");
  }

  stage = "post-reduction-bound";
  CertifiedReal kpost = refined_relative(
      k14.source() * (log_(lit(20)) + lit(d_max) * la) / la, rel, ladder);
  CertifiedReal additive =
      CertifiedReal::certify(log_(lit(3)) / la, pow10(-9), ladder);
  mpz_class cap_post = matveev::solve_self_referential(
      matveev::GrowthKind::OnePlusLog, kpost.upper(), additive.upper(),
      ladder);
  if (cap_post > cap_abs) {
    throw StageError("post-reduction-bound",
                     "stage ordering violated: post cap above absolute cap");
  }
  cert.bound_chain.push_back(
      {"n-after-reduction",
       {matveev::BoundStage::NAfterReduction, kpost, cap_post}});

  stage = "reduction-round-2";
  if (compare(lit(13) * la, mpq_class(6), ladder) != Ordering::Greater) {
    throw StageError("reduction-round-2", "A = 13 fails A log(alpha) > 6");
  }
  reduction::SweepOptions so;
  so.ladder = ladder;
  reduction::SweepResult sweep = reduction::sweep_mu_family(
      p, 3, d_max, cap_post, mpq_class(13), real::golden_ratio(), so);
  if (sweep.omega_cap > cap + 1) {
    throw StageError("reduction-round-2",
                     "sweep cap does not fall below the search cap");
  }
  cert.sweep = sweep;

  stage = "residual-elimination";
  for (long d : sweep.exceptions) {
    cert.residual_cases.push_back(eliminate_residual(p, d));
  }

  stage = "verdict";
  std::set<seq::SolutionTriple> verdict(cert.search_solutions.begin(),
                                        cert.search_solutions.end());
  for (const auto& sc : cert.small_case_solutions) verdict.insert(sc.triple);
  for (const auto& t : verdict) {
    if (t.n < 2 || t.m < 0 || t.m >= t.n) {
      throw StageError("verdict", "malformed solution triple");
    }
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), t.a);
    if (seq::fib(t.n) - seq::fib(t.m) != pw) {
      throw StageError("verdict", "solution fails exact re-verification");
    }
    if (static_cast<long>(t.a) >= t.n) {
      throw StageError("verdict", "exponent bound a < n violated");
    }
  }
  cert.verdict.assign(verdict.begin(), verdict.end());
  cert.certified = true;
}

}  // namespace

ProofCertificate run_full_proof(const PipelineConfig& config) {
  ProofCertificate cert;
  cert.prime = config.prime;
  cert.search_cap = config.search_cap;
  std::string stage = "config";
  try {
    run_stages(config, cert, stage);
  } catch (const PrecisionExhausted& e) {
    cert.certified = false;
    cert.verdict.clear();
    cert.failed_stage = stage;
    cert.failure_kind = "precision-exhaustion";
    cert.notes.push_back(e.what());
  } catch (const StageError& e) {
    cert.certified = false;
    cert.verdict.clear();
    cert.failed_stage = stage;
    cert.failure_kind = "stage-failure";
    cert.notes.push_back(e.what());
  } catch (const std::exception& e) {
    cert.certified = false;
    cert.verdict.clear();
    cert.failed_stage = stage;
    cert.failure_kind = "domain-error";
    cert.notes.push_back(e.what());
  }
  return cert;
}

}  // namespace fibdiff::pipeline
