#pragma once

// Independent reference computations for the test suites. Nothing here
// calls into the library paths these oracles check.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace primecycles::testing {

inline bool trial_division_is_prime(std::uint64_t k) {
  if (k < 2) return false;
  for (std::uint64_t d = 2; d * d <= k; ++d) {
    if (k % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> trial_division_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k <= limit; ++k) {
    if (trial_division_is_prime(k)) out.push_back(k);
  }
  return out;
}

// H_n - ln n from the Euler-Maclaurin expansion around the literal gamma.
inline double harmonic_minus_log_asymptotic(double n) {
  constexpr double gamma = 0.57721566490153286061;
  return gamma + 1.0 / (2 * n) - 1.0 / (12 * n * n) + 1.0 / (120 * std::pow(n, 4));
}

// Multiset of cycle lengths, descending.
using CycleType = std::vector<std::uint64_t>;

// All cycle types of size n with every part satisfying `allowed`, each with
// its class size n! / prod_l (l^{m_l} m_l!).
inline std::map<CycleType, mpz_class> cycle_type_classes(
    std::uint64_t n, const std::function<bool(std::uint64_t)>& allowed) {
  std::map<CycleType, mpz_class> out;
  CycleType current;
  std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t remaining,
                                                               std::uint64_t max_part) {
    if (remaining == 0) {
      mpz_class size;
      mpz_fac_ui(size.get_mpz_t(), n);
      std::map<std::uint64_t, unsigned long> mult;
      for (auto l : current) ++mult[l];
      for (auto [l, m] : mult) {
        mpz_class lm;
        mpz_ui_pow_ui(lm.get_mpz_t(), l, m);
        mpz_class mf;
        mpz_fac_ui(mf.get_mpz_t(), m);
        size /= lm * mf;
      }
      out[current] = size;
      return;
    }
    for (std::uint64_t part = std::min(remaining, max_part); part >= 1; --part) {
      if (!allowed(part)) continue;
      current.push_back(part);
      rec(remaining - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

// phi(z) summed directly over primes <= limit in long double.
inline long double phi_direct(long double z, std::uint64_t limit) {
  long double sum = 0.0L;
  for (std::uint64_t p : trial_division_primes(limit)) {
    sum += std::pow(z, static_cast<long double>(p)) / p;
  }
  return sum;
}

inline long double phi_prime_direct(long double z, std::uint64_t limit) {
  long double sum = 0.0L;
  for (std::uint64_t p : trial_division_primes(limit)) {
    sum += std::pow(z, static_cast<long double>(p - 1));
  }
  return sum;
}

}  // namespace primecycles::testing
