#include "fibdiff/certificate.hpp"

#include <mpfr.h>

#include <fstream>

#include "fibdiff/errors.hpp"
#include "json.hpp"

namespace fibdiff::cert {

using nlohmann::ordered_json;

std::string decimal_string(const mpq_class& v, int sig_digits) {
  if (sig_digits < 1) throw DomainError("decimal_string: need >= 1 digit");
  if (v == 0) return "0";
  mpfr_t x;
  mpfr_init2(x, 64 + static_cast<mpfr_prec_t>(sig_digits) * 4);
  mpfr_set_q(x, v.get_mpq_t(), MPFR_RNDN);
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(sig_digits),
                           x, MPFR_RNDN);
  std::string digits = raw;
  mpfr_free_str(raw);
  mpfr_clear(x);
  std::string sign;
  if (!digits.empty() && digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  // mpfr convention: value = 0.digits * 10^exp10.
  std::string out = sign + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  long e = static_cast<long>(exp10) - 1;
  out += "e";
  out += (e < 0 ? "-" : "+");
  if (std::labs(e) < 10) out += "0";
  out += std::to_string(std::labs(e));
  return out;
}

namespace {

ordered_json real_json(const real::CertifiedReal& r) {
  if (!r.valid()) return nullptr;
  ordered_json j;
  j["decimal"] = decimal_string(r.midpoint());
  j["radius"] = decimal_string(r.width() / 2, 3);
  j["lower_exact"] = mpq_class(r.lower()).get_str();
  j["upper_exact"] = mpq_class(r.upper()).get_str();
  j["precision_bits"] = r.precision_bits();
  return j;
}

ordered_json triple_json(const seq::SolutionTriple& t) {
  return ordered_json::array({t.n, t.m, t.a});
}

const char* stage_name(matveev::BoundStage s) {
  switch (s) {
    case matveev::BoundStage::NmBound:
      return "nm-bound";
    case matveev::BoundStage::NAbsolute:
      return "n-absolute";
    case matveev::BoundStage::NAfterReduction:
      return "n-after-reduction";
  }
  return "?";
}

const char* status_name(reduction::StepStatus s) {
  switch (s) {
    case reduction::StepStatus::Certified:
      return "certified";
    case reduction::StepStatus::NonPositive:
      return "non-positive";
    case reduction::StepStatus::Unresolved:
      return "unresolved";
  }
  return "?";
}

ordered_json reduction_json(const reduction::ReductionInstance& inst) {
  ordered_json j;
  j["q"] = inst.q.get_str();
  j["M"] = inst.m_cap.get_str();
  j["A"] = inst.big_a.get_str();
  j["epsilon"] = real_json(inst.epsilon);
  j["threshold"] = real_json(inst.threshold);
  if (inst.omega_cap) j["omega_cap"] = *inst.omega_cap;
  return j;
}

ordered_json sweep_json(const reduction::SweepResult& sw) {
  ordered_json j;
  j["q"] = sw.q.get_str();
  j["convergent_attempts"] = sw.convergent_attempts;
  j["exceptions"] = sw.exceptions;
  j["eps_min_lower"] = decimal_string(sw.eps_min_lo);
  j["eps_max_upper"] = decimal_string(sw.eps_max_hi);
  j["threshold"] = real_json(sw.threshold);
  j["omega_cap"] = sw.omega_cap;
  ordered_json rows = ordered_json::array();
  for (const auto& row : sw.rows) {
    ordered_json r;
    r["d"] = row.d;
    r["status"] = status_name(row.status);
    if (row.status != reduction::StepStatus::Unresolved) {
      r["eps_lower"] = decimal_string(row.eps_lo);
      r["eps_upper"] = decimal_string(row.eps_hi);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace

std::string render_certificate(const pipeline::ProofCertificate& cert) {
  ordered_json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["prime"] = cert.prime;
  j["search_cap"] = cert.search_cap;
  j["certified"] = cert.certified;
  if (!cert.certified) {
    j["failed_stage"] = cert.failed_stage;
    j["failure_kind"] = cert.failure_kind;
  }

  ordered_json stages = ordered_json::array();
  {
    ordered_json s;
    s["name"] = "brute-force-search";
    ordered_json sols = ordered_json::array();
    for (const auto& t : cert.search_solutions) sols.push_back(triple_json(t));
    s["solutions"] = std::move(sols);
    stages.push_back(std::move(s));
  }
  {
    ordered_json s;
    s["name"] = "small-case-split";
    ordered_json sols = ordered_json::array();
    for (const auto& sc : cert.small_case_solutions) {
      ordered_json e;
      e["triple"] = triple_json(sc.triple);
      e["rule"] = sc.rule;
      sols.push_back(std::move(e));
    }
    s["solutions"] = std::move(sols);
    stages.push_back(std::move(s));
  }
  {
    ordered_json s;
    s["name"] = "bound-chain";
    ordered_json bounds = ordered_json::array();
    for (const auto& sb : cert.bound_chain) {
      ordered_json b;
      b["name"] = sb.name;
      b["stage"] = stage_name(sb.bound.stage);
      b["coefficient"] = real_json(sb.bound.coefficient);
      if (sb.bound.resulting_cap) b["cap"] = sb.bound.resulting_cap->get_str();
      bounds.push_back(std::move(b));
    }
    s["bounds"] = std::move(bounds);
    stages.push_back(std::move(s));
  }
  {
    ordered_json s;
    s["name"] = "reduction-round-1";
    ordered_json insts = ordered_json::array();
    for (const auto& inst : cert.reductions) {
      insts.push_back(reduction_json(inst));
    }
    s["instances"] = std::move(insts);
    stages.push_back(std::move(s));
  }
  if (cert.sweep) {
    ordered_json s;
    s["name"] = "reduction-round-2";
    s["sweep"] = sweep_json(*cert.sweep);
    stages.push_back(std::move(s));
  }
  {
    ordered_json s;
    s["name"] = "residual-elimination";
    ordered_json cases = ordered_json::array();
    for (const auto& rc : cert.residual_cases) {
      ordered_json c;
      c["d"] = rc.d;
      c["rule"] = rc.rule;
      if (rc.factor_index != 0) {
        c["factor_index"] = rc.factor_index;
        c["factor_value"] = rc.factor_value.get_str();
      }
      c["note"] = rc.note;
      cases.push_back(std::move(c));
    }
    s["cases"] = std::move(cases);
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  j["notes"] = cert.notes;
  if (cert.certified) {
    ordered_json verdict = ordered_json::array();
    for (const auto& t : cert.verdict) verdict.push_back(triple_json(t));
    j["verdict"] = std::move(verdict);
  }
  return j.dump(2) + "\n";
}

void emit_certificate(const pipeline::ProofCertificate& cert,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("emit_certificate: cannot open " + path);
  out << render_certificate(cert);
  if (!out) throw DomainError("emit_certificate: write failed for " + path);
}

std::vector<seq::SolutionTriple> parse_verdict(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("parse_verdict: cannot open " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DomainError(std::string("parse_verdict: malformed document: ") +
                      e.what());
  }
  if (!j.contains("verdict")) {
    throw DomainError("parse_verdict: document carries no verdict");
  }
  std::vector<seq::SolutionTriple> out;
  for (const auto& t : j["verdict"]) {
    out.push_back({t.at(0).get<long>(), t.at(1).get<long>(),
                   t.at(2).get<unsigned long>()});
  }
  return out;
}

}  // namespace fibdiff::cert
