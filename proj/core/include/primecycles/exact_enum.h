#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "primecycles/cycle_classes.h"

namespace primecycles {

inline constexpr std::size_t kDefaultExactCap = 2000;
inline constexpr std::size_t kDefaultFloatCap = 10'000'000;
inline constexpr std::size_t kCycleTypeOracleCap = 80;
inline constexpr std::size_t kBruteForceCap = 9;

enum class TableMode { kExact, kFloat, kBoth };

struct TableOptions {
  TableMode mode = TableMode::kFloat;
  std::size_t exact_cap = kDefaultExactCap;
  std::size_t float_cap = kDefaultFloatCap;
  // Divide-and-conquer online convolution for the float coefficients.
  bool fast_path = false;
};

// Nearest double to q (ties to even).
double to_double(const mpq_class& q);

// Coefficients a_n = P_{n,A} / n! for n = 0..n_max.
//
// The float and exact columns both come from n a_n = sum_{k in A, k<=n} a_{n-k},
// which follows from differentiating exp(sum_{k in A} z^k / k).
class CountTable {
 public:
  const CycleClassSpec& spec() const noexcept { return spec_; }
  std::size_t n_max() const noexcept { return n_max_; }
  TableMode mode() const noexcept { return mode_; }
  bool has_exact() const noexcept { return mode_ != TableMode::kFloat; }
  bool has_float() const noexcept { return mode_ != TableMode::kExact; }

  // P_{n,A}; exact tables only.
  const mpz_class& count(std::size_t n) const;
  // a_n as a canonical rational; exact tables only.
  const mpq_class& a_exact(std::size_t n) const;
  // a_n in double precision. Exact-only tables round the rational.
  double a_float(std::size_t n) const;
  std::span<const double> a_float_values() const noexcept { return a_float_; }

 private:
  friend CountTable build_table(const CycleClassSpec&, std::size_t, const TableOptions&);

  explicit CountTable(CycleClassSpec spec) : spec_(std::move(spec)) {}
  void check_index(std::size_t n) const;

  CycleClassSpec spec_;
  std::size_t n_max_ = 0;
  TableMode mode_ = TableMode::kFloat;
  std::vector<mpz_class> counts_;
  std::vector<mpq_class> a_exact_;
  std::vector<double> a_float_;
};

CountTable build_table(const CycleClassSpec& spec, std::size_t n_max,
                       const TableOptions& options = {});

// P_{n,A} by the integer form of the recurrence,
//   P_n = sum_{k in A, k<=n} (n-1)(n-2)...(n-k+1) P_{n-k}.
mpz_class count_exact(const CycleClassSpec& spec, std::size_t n,
                      std::size_t exact_cap = kDefaultExactCap);

// P_0..P_n in one pass.
std::vector<mpz_class> count_exact_sequence(const CycleClassSpec& spec, std::size_t n,
                                            std::size_t exact_cap = kDefaultExactCap);

// Independent oracle: sum over partitions of n with parts in A of
// n! / prod_l (l^{m_l} m_l!).
mpz_class count_by_cycle_types(const CycleClassSpec& spec, std::size_t n);

// Independent oracle: enumerate all n! permutations and decompose into cycles.
std::uint64_t count_brute_force(const CycleClassSpec& spec, std::size_t n);

// T_n = sum_{k<=n} a_k with Kahan compensation, ascending k.
double partial_sum(const CountTable& table, std::size_t n);
mpq_class partial_sum_exact(const CountTable& table, std::size_t n);

// CSV dump with columns n, P_n (exact tables only), a_n, T_n. Floating
// columns carry 17 significant digits; P_n is printed in full decimal.
void write_table_csv(const CountTable& table, std::ostream& out);

// Float coefficients via the direct O(n_max |A(n_max)|) recurrence.
std::vector<double> coefficients_direct(std::span<const std::uint64_t> members,
                                        std::size_t n_max);

// Same coefficients via online convolution; O(n_max log^2 n_max). Transform
// round-off is absolute, on the scale of the largest coefficient, so a_n far
// below max_k a_k (sparse sets) lose relative accuracy.
std::vector<double> coefficients_online(std::span<const std::uint64_t> members,
                                        std::size_t n_max);

}  // namespace primecycles
