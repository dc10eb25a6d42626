#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fibdiff/certificate.hpp"
#include "fibdiff/pipeline.hpp"

namespace {

constexpr int kExitCertified = 0;
constexpr int kExitUsage = 2;
constexpr int kExitStageFailure = 3;
constexpr int kExitPrecision = 4;

void print_triples(const std::vector<fibdiff::seq::SolutionTriple>& ts) {
  for (const auto& t : ts) {
    std::cout << "  (" << t.n << ", " << t.m << ", " << t.a << ")\n";
  }
}

void print_summary(const fibdiff::pipeline::ProofCertificate& cert,
                   int verbosity) {
  if (verbosity < 1) return;
  std::cout << "prime " << cert.prime << ", search cap " << cert.search_cap
            << "\n";
  std::cout << "search solutions: " << cert.search_solutions.size()
            << ", small-case rows: " << cert.small_case_solutions.size()
            << "\n";
  for (const auto& sb : cert.bound_chain) {
    std::cout << "bound " << sb.name << ": coefficient in ["
              << fibdiff::cert::decimal_string(sb.bound.coefficient.lower(), 8)
              << ", "
              << fibdiff::cert::decimal_string(sb.bound.coefficient.upper(), 8)
              << "]";
    if (sb.bound.resulting_cap) {
      std::cout << ", cap " << sb.bound.resulting_cap->get_str();
    }
    std::cout << "\n";
  }
  for (const auto& inst : cert.reductions) {
    std::cout << "round 1: q = " << inst.q.get_str() << ", epsilon ~ "
              << fibdiff::cert::decimal_string(inst.epsilon.midpoint(), 6)
              << ", threshold ~ "
              << fibdiff::cert::decimal_string(inst.threshold.midpoint(), 8)
              << "\n";
  }
  if (cert.sweep) {
    const auto& sw = *cert.sweep;
    std::cout << "round 2: q = " << sw.q.get_str() << " (attempt "
              << sw.convergent_attempts << "), exceptions {";
    for (std::size_t i = 0; i < sw.exceptions.size(); ++i) {
      std::cout << (i ? ", " : "") << sw.exceptions[i];
    }
    std::cout << "}, eps in ["
              << fibdiff::cert::decimal_string(sw.eps_min_lo, 6) << ", "
              << fibdiff::cert::decimal_string(sw.eps_max_hi, 6)
              << "], threshold ~ "
              << fibdiff::cert::decimal_string(sw.threshold.midpoint(), 8)
              << "\n";
    if (verbosity >= 2) {
      for (const auto& row : sw.rows) {
        std::cout << "  d = " << row.d << ": ";
        if (row.status == fibdiff::reduction::StepStatus::Certified) {
          std::cout << "eps >= "
                    << fibdiff::cert::decimal_string(row.eps_lo, 6) << "\n";
        } else if (row.status ==
                   fibdiff::reduction::StepStatus::NonPositive) {
          std::cout << "exception (eps <= 0)\n";
        } else {
          std::cout << "exception (unresolved)\n";
        }
      }
    }
  }
  for (const auto& rc : cert.residual_cases) {
    std::cout << "residual d = " << rc.d << ": " << rc.rule;
    if (rc.factor_index != 0) {
      std::cout << " (index " << rc.factor_index << ", value "
                << rc.factor_value.get_str() << ")";
    }
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified solver for F_n - F_m = p^a"};
  long prime = 0;
  long search_cap = 200;
  int precision_start = 128;
  int precision_max = 16384;
  std::string emit_path;
  int verbosity = 0;
  app.add_option("--prime", prime, "prime p of the equation")->required();
  app.add_option("--search-cap", search_cap, "exhaustive search bound on n")
      ->default_val(200);
  app.add_option("--precision-start", precision_start,
                 "initial working precision in bits")
      ->default_val(128);
  app.add_option("--precision-max", precision_max,
                 "maximum working precision in bits")
      ->default_val(16384);
  app.add_option("--emit", emit_path, "write the certificate to this path");
  app.add_option("--verbose", verbosity, "0 silent, 1 stages, 2 full trace")
      ->default_val(0)
      ->check(CLI::Range(0, 2));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (!fibdiff::pipeline::is_prime(prime)) {
    std::cerr << "error: --prime " << prime << " is not prime\n";
    return kExitUsage;
  }
  if (search_cap < 10 || precision_start < 16 ||
      precision_max < precision_start) {
    std::cerr << "error: invalid cap or precision bounds\n";
    return kExitUsage;
  }

  fibdiff::pipeline::PipelineConfig config;
  config.prime = prime;
  config.search_cap = search_cap;
  config.ladder = {precision_start, precision_max};
  fibdiff::pipeline::ProofCertificate cert =
      fibdiff::pipeline::run_full_proof(config);

  print_summary(cert, verbosity);
  if (!emit_path.empty()) {
    try {
      fibdiff::cert::emit_certificate(cert, emit_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitStageFailure;
    }
  }
  if (cert.certified) {
    std::cout << "certified: " << cert.verdict.size()
              << " solutions for p = " << prime << "\n";
    print_triples(cert.verdict);
    return kExitCertified;
  }
  std::cerr << "failed stage: " << cert.failed_stage << " ("
            << cert.failure_kind << ")\n";
  for (const auto& note : cert.notes) std::cerr << "  " << note << "\n";
  return cert.failure_kind == "precision-exhaustion" ? kExitPrecision
                                                     : kExitStageFailure;
}
