#ifndef FIBDIFF_SEQUENCES_HPP
#define FIBDIFF_SEQUENCES_HPP

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <vector>

namespace fibdiff::seq {

// Guard against accidental memory blowup; far above any pipeline need.
inline constexpr long kIndexCap = 1'000'000;

// Exact F_n / L_n by fast doubling. Negative indices follow the sign rules
// F_{-n} = (-1)^{n+1} F_n and L_{-n} = (-1)^n L_n.
mpz_class fib(long n);
mpz_class lucas(long n);

// Which side of the two-case difference identity applies.
enum class FactorRule {
  A,  // n == m (mod 4):  F_n - F_m = F_{(n-m)/2} * L_{(n+m)/2}
  B,  // n == m+2 (mod 4): F_n - F_m = F_{(n+m)/2} * L_{(n-m)/2}
};

struct DifferenceFactors {
  long fib_index;
  long lucas_index;
  FactorRule rule;
};

// Requires n > m >= 0 and n == m (mod 2). Guarantees
// fib(n) - fib(m) == fib(fib_index) * lucas(lucas_index).
DifferenceFactors diff_factorization(long n, long m);

// Largest-exponent test: returns a with x == p^a, or nullopt. x must be >= 1.
std::optional<unsigned long> prime_power_exponent(const mpz_class& x,
                                                  const mpz_class& p);

// The complete list of perfect powers (y^a, a >= 2, plus the degenerate 0/1
// entries) occurring in the two sequences. Taken as an axiom.
struct PerfectPowerFacts {
  std::vector<long> fib_indices;      // {0, 1, 2, 6, 12}
  std::vector<mpz_class> fib_values;  // {0, 1, 1, 8, 144}
  std::vector<long> lucas_indices;    // {1, 3}
  std::vector<mpz_class> lucas_values;  // {1, 4}

  bool is_fib_power_value(const mpz_class& v) const;
  bool is_lucas_power_value(const mpz_class& v) const;
};

const PerfectPowerFacts& perfect_power_facts();

// A candidate or confirmed solution of F_n - F_m = p^a.
struct SolutionTriple {
  long n = 0;
  long m = 0;
  unsigned long a = 0;
  auto operator<=>(const SolutionTriple&) const = default;
};

}  // namespace fibdiff::seq

#endif
