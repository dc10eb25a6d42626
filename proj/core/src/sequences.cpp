#include "fibdiff/sequences.hpp"

#include <cstdlib>
#include <string>
#include <utility>

#include "fibdiff/errors.hpp"

namespace fibdiff::seq {
namespace {

void check_cap(long n) {
  if (n > kIndexCap || n < -kIndexCap) {
    throw CapacityError("sequence index " + std::to_string(n) +
                        " exceeds cap " + std::to_string(kIndexCap));
  }
}

// (F_k, F_{k+1}) by fast doubling.
std::pair<mpz_class, mpz_class> fib_pair(unsigned long n) {
  if (n == 0) return {mpz_class(0), mpz_class(1)};
  auto [a, b] = fib_pair(n >> 1);
  mpz_class c = a * (2 * b - a);  // F_{2k}
  mpz_class d = a * a + b * b;    // F_{2k+1}
  if (n & 1) return {d, c + d};
  return {std::move(c), std::move(d)};
}

}  // namespace

mpz_class fib(long n) {
  check_cap(n);
  if (n >= 0) return fib_pair(static_cast<unsigned long>(n)).first;
  mpz_class f = fib_pair(static_cast<unsigned long>(-n)).first;
  return (-n) % 2 == 0 ? mpz_class(-f) : f;
}

mpz_class lucas(long n) {
  check_cap(n);
  const long k = n >= 0 ? n : -n;
  auto [a, b] = fib_pair(static_cast<unsigned long>(k));
  mpz_class l = 2 * b - a;  // L_k = F_{k-1} + F_{k+1} = 2F_{k+1} - F_k
  if (n < 0 && k % 2 != 0) l = -l;
  return l;
}

DifferenceFactors diff_factorization(long n, long m) {
  check_cap(n);
  if (!(n > m && m >= 0)) {
    throw DomainError("diff_factorization: requires n > m >= 0");
  }
  if ((n - m) % 2 != 0) {
    throw DomainError("diff_factorization: requires n == m (mod 2)");
  }
  if ((n - m) % 4 == 0) {
    return {(n - m) / 2, (n + m) / 2, FactorRule::A};
  }
  return {(n + m) / 2, (n - m) / 2, FactorRule::B};
}

std::optional<unsigned long> prime_power_exponent(const mpz_class& x,
                                                  const mpz_class& p) {
  if (x < 1) throw DomainError("prime_power_exponent: requires x >= 1");
  if (p < 2) throw DomainError("prime_power_exponent: requires p >= 2");
  mpz_class v = x;
  unsigned long a = 0;
  while (v > 1) {
    if (!mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) return std::nullopt;
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    ++a;
  }
  return a;
}

bool PerfectPowerFacts::is_fib_power_value(const mpz_class& v) const {
  for (const auto& x : fib_values) {
    if (x == v) return true;
  }
  return false;
}

bool PerfectPowerFacts::is_lucas_power_value(const mpz_class& v) const {
  for (const auto& x : lucas_values) {
    if (x == v) return true;
  }
  return false;
}

const PerfectPowerFacts& perfect_power_facts() {
  static const PerfectPowerFacts facts = {
      {0, 1, 2, 6, 12},
      {mpz_class(0), mpz_class(1), mpz_class(1), mpz_class(8), mpz_class(144)},
      {1, 3},
      {mpz_class(1), mpz_class(4)},
  };
  return facts;
}

}  // namespace fibdiff::seq
