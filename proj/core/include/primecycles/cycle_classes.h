#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "primecycles/primes.h"

namespace primecycles {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

inline constexpr std::uint64_t kUnboundedSupport = std::numeric_limits<std::uint64_t>::max();

// The set A of admissible cycle lengths.
//
// Only enumerated kinds are representable, so each one carries an exact
// declared density. Values are immutable and cheap to copy; the prime kind
// shares its backing table.
class CycleClassSpec {
 public:
  enum class Kind { kPrimes, kExplicitSet, kResidueClasses, kAll, kSingleton };

  static CycleClassSpec primes(std::shared_ptr<const PrimeTable> table);
  static CycleClassSpec explicit_set(std::vector<std::uint64_t> members);
  static CycleClassSpec residue_classes(std::uint64_t modulus,
                                        std::vector<std::uint64_t> residues);
  static CycleClassSpec odd() { return residue_classes(2, {1}); }
  static CycleClassSpec even() { return residue_classes(2, {0}); }
  static CycleClassSpec all();
  static CycleClassSpec singleton(std::uint64_t k);

  Kind kind() const noexcept { return kind_; }

  // Largest k for which membership can be answered.
  std::uint64_t support_limit() const noexcept;

  const PrimeTable* prime_table() const noexcept { return table_.get(); }
  std::uint64_t modulus() const noexcept { return modulus_; }
  const std::vector<std::uint64_t>& residues() const noexcept { return values_; }
  const std::vector<std::uint64_t>& members() const noexcept { return values_; }

  // Canonical text form, parseable by parse_cycle_class.
  std::string to_string() const;

 private:
  CycleClassSpec() = default;

  Kind kind_ = Kind::kAll;
  std::shared_ptr<const PrimeTable> table_;
  std::uint64_t modulus_ = 1;
  // Sorted residues for kResidueClasses, sorted members for the finite kinds.
  std::vector<std::uint64_t> values_;
};

bool contains(const CycleClassSpec& spec, std::uint64_t k);

std::optional<Rational> density(const CycleClassSpec& spec);

// Members of A in [1, n], ascending.
std::vector<std::uint64_t> members_upto(const CycleClassSpec& spec, std::uint64_t n);

// L(n) = sum_{k in A, k <= n} 1/k - rho ln n, ascending double summation.
double harmonic_offset(const CycleClassSpec& spec, std::uint64_t n);

// Accepts "primes", "all", "odd", "even", "mod:m:r1,r2,...",
// "set:k1,k2,..." (possibly empty) and "single:k". `sieve_limit` sizes the
// prime table for "primes".
CycleClassSpec parse_cycle_class(std::string_view text, std::uint64_t sieve_limit);

}  // namespace primecycles
