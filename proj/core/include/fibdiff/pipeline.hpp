#ifndef FIBDIFF_PIPELINE_HPP
#define FIBDIFF_PIPELINE_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "fibdiff/matveev.hpp"
#include "fibdiff/realnum.hpp"
#include "fibdiff/reduction.hpp"
#include "fibdiff/sequences.hpp"

namespace fibdiff::pipeline {

struct PipelineConfig {
  long prime = 0;
  long search_cap = 200;
  real::PrecisionLadder ladder = {};
};

// All (n, m, a) with 0 <= m < n <= cap, n >= 2, F_n - F_m = p^a, by exact
// enumeration.
std::vector<seq::SolutionTriple> brute_force_search(long p, long cap);

struct SmallCaseSolution {
  seq::SolutionTriple triple;
  std::string rule;  // "n-m=1", "n-m=2", "m=0"
};

// Resolves the three unbounded trivial families exactly: n-m=1 (F_{m-1}=p^a),
// n-m=2 (F_{m+1}=p^a), m=0 (F_n=p^a), via the perfect-power tables plus
// direct search for the a <= 1 coincidences.
std::vector<SmallCaseSolution> small_case_split(long p);

struct ResidualCase {
  long d = 0;
  std::string rule;  // "d4-lucas-shift", "fixed-lucas-factor",
                     // "fixed-fib-factor"
  long factor_index = 0;   // 0 for the d=4 rule
  mpz_class factor_value;  // fixed factor; 0 for the d=4 rule
  std::string note;
};

// Eliminates one exception d (context: n > search_cap, a >= 2). Throws
// StageError for any d the paper's three rules do not cover.
ResidualCase eliminate_residual(long p, long d);

struct StageBound {
  std::string name;
  matveev::BoundChain bound;
};

struct ProofCertificate {
  long prime = 0;
  long search_cap = 0;
  std::vector<seq::SolutionTriple> search_solutions;
  std::vector<SmallCaseSolution> small_case_solutions;
  std::vector<StageBound> bound_chain;
  std::vector<reduction::ReductionInstance> reductions;  // round 1
  std::optional<reduction::SweepResult> sweep;           // round 2
  std::vector<ResidualCase> residual_cases;
  std::vector<seq::SolutionTriple> verdict;
  bool certified = false;
  std::string failed_stage;  // empty when certified
  std::string failure_kind;  // "precision-exhaustion", "stage-failure", ...
  std::vector<std::string> notes;
};

// End-to-end proof: search, trivial splits, Matveev chain, two reduction
// rounds, residual elimination. Never throws: failures are named in the
// returned certificate (certified=false, no verdict).
ProofCertificate run_full_proof(const PipelineConfig& config);

bool is_prime(long p);

}  // namespace fibdiff::pipeline

#endif
