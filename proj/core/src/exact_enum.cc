#include "primecycles/exact_enum.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "primecycles/errors.h"
#include "primecycles/report.h"

namespace primecycles {
namespace {

std::vector<bool> membership_mask(const CycleClassSpec& spec, std::size_t n) {
  std::vector<bool> mask(n + 1, false);
  for (std::uint64_t k : members_upto(spec, n)) mask[k] = true;
  return mask;
}

void count_partitions(std::span<const std::uint64_t> parts_desc, std::size_t idx,
                      std::uint64_t remaining, const mpz_class& value, mpz_class& total) {
  if (remaining == 0) {
    total += value;
    return;
  }
  if (idx == parts_desc.size()) return;
  const std::uint64_t part = parts_desc[idx];
  mpz_class w = value;
  for (std::uint64_t m = 0;; ++m) {
    // w = value / (part^m m!), integral at every step.
    count_partitions(parts_desc, idx + 1, remaining, w, total);
    if (remaining < part) break;
    remaining -= part;
    mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), part * (m + 1));
  }
}

}  // namespace

double to_double(const mpq_class& q) {
  if (sgn(q) == 0) return 0.0;
  if (sgn(q) < 0) return -to_double(-q);
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  // Scale so the quotient has 54 bits: one guard bit beyond the mantissa.
  const long shift = 54 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
  if (shift > 1074 + 54 - 1) return q.get_d();  // deep subnormal territory
  mpz_class scaled_num = num;
  mpz_class scaled_den = den;
  if (shift >= 0) {
    scaled_num <<= static_cast<mp_bitcnt_t>(shift);
  } else {
    scaled_den <<= static_cast<mp_bitcnt_t>(-shift);
  }
  mpz_class quotient, remainder;
  mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), scaled_num.get_mpz_t(),
              scaled_den.get_mpz_t());
  // quotient has 54 or 55 bits; keep 53 and round half to even on the rest.
  const int extra = static_cast<int>(mpz_sizeinbase(quotient.get_mpz_t(), 2)) - 53;
  const unsigned long low = static_cast<unsigned long>(
      mpz_fdiv_ui(quotient.get_mpz_t(), 1ul << extra));
  const bool sticky = remainder != 0;
  quotient >>= static_cast<mp_bitcnt_t>(extra);
  const unsigned long half = 1ul << (extra - 1);
  if (low > half || (low == half && (sticky || mpz_odd_p(quotient.get_mpz_t())))) {
    quotient += 1;
  }
  if (shift - extra > 1074) return q.get_d();
  return std::ldexp(quotient.get_d(), static_cast<int>(extra - shift));
}

void CountTable::check_index(std::size_t n) const {
  if (n > n_max_) {
    fail(ErrorCode::kOutOfRange, "index " + std::to_string(n) + " beyond table n_max " +
                                     std::to_string(n_max_));
  }
}

const mpz_class& CountTable::count(std::size_t n) const {
  check_index(n);
  if (!has_exact()) fail(ErrorCode::kInvalidArgument, "table was built without exact values");
  return counts_[n];
}

const mpq_class& CountTable::a_exact(std::size_t n) const {
  check_index(n);
  if (!has_exact()) fail(ErrorCode::kInvalidArgument, "table was built without exact values");
  return a_exact_[n];
}

double CountTable::a_float(std::size_t n) const {
  check_index(n);
  return has_float() ? a_float_[n] : to_double(a_exact_[n]);
}

std::vector<mpz_class> count_exact_sequence(const CycleClassSpec& spec, std::size_t n,
                                            std::size_t exact_cap) {
  if (n > exact_cap) {
    fail(ErrorCode::kResourceLimit, "exact enumeration to n = " + std::to_string(n) +
                                        " exceeds cap " + std::to_string(exact_cap));
  }
  const std::vector<bool> in_a = membership_mask(spec, n);
  std::vector<mpz_class> counts(n + 1);
  counts[0] = 1;
  mpz_class acc;
  for (std::size_t m = 1; m <= n; ++m) {
    // Horner over k = m..1: acc = c_k + (m - k) acc with c_k = [k in A] P_{m-k},
    // which accumulates the falling factorials (m-1)...(m-k+1) in place.
    acc = 0;
    for (std::size_t k = m; k >= 1; --k) {
      if (acc != 0) mpz_mul_ui(acc.get_mpz_t(), acc.get_mpz_t(), m - k);
      if (in_a[k]) acc += counts[m - k];
    }
    counts[m] = acc;
  }
  return counts;
}

mpz_class count_exact(const CycleClassSpec& spec, std::size_t n, std::size_t exact_cap) {
  return std::move(count_exact_sequence(spec, n, exact_cap).back());
}

mpz_class count_by_cycle_types(const CycleClassSpec& spec, std::size_t n) {
  if (n > kCycleTypeOracleCap) {
    fail(ErrorCode::kResourceLimit, "partition oracle limited to n <= " +
                                        std::to_string(kCycleTypeOracleCap));
  }
  std::vector<std::uint64_t> parts = members_upto(spec, n);
  std::reverse(parts.begin(), parts.end());
  mpz_class factorial;
  mpz_fac_ui(factorial.get_mpz_t(), n);
  mpz_class total = 0;
  count_partitions(parts, 0, n, factorial, total);
  return total;
}

std::uint64_t count_brute_force(const CycleClassSpec& spec, std::size_t n) {
  if (n > kBruteForceCap) {
    fail(ErrorCode::kResourceLimit,
         "brute force limited to n <= " + std::to_string(kBruteForceCap));
  }
  const std::vector<bool> in_a = membership_mask(spec, n);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    unsigned seen = 0;
    bool ok = true;
    for (std::size_t start = 0; start < n && ok; ++start) {
      if (seen & (1u << start)) continue;
      std::size_t length = 0;
      for (std::size_t i = start; !(seen & (1u << i)); i = perm[i]) {
        seen |= 1u << i;
        ++length;
      }
      ok = in_a[length];
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::vector<double> coefficients_direct(std::span<const std::uint64_t> members,
                                        std::size_t n_max) {
  std::vector<double> a(n_max + 1, 0.0);
  a[0] = 1.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double sum = 0.0;
    for (std::uint64_t k : members) {
      if (k > n) break;
      sum += a[n - k];
    }
    a[n] = sum / static_cast<double>(n);
  }
  return a;
}

CountTable build_table(const CycleClassSpec& spec, std::size_t n_max,
                       const TableOptions& options) {
  CountTable table(spec);
  table.n_max_ = n_max;
  table.mode_ = options.mode;

  if (table.has_exact()) {
    table.counts_ = count_exact_sequence(spec, n_max, options.exact_cap);
    table.a_exact_.resize(n_max + 1);
    mpz_class factorial = 1;
    for (std::size_t n = 0; n <= n_max; ++n) {
      if (n > 0) factorial *= static_cast<unsigned long>(n);
      table.a_exact_[n] = mpq_class(table.counts_[n], factorial);
      table.a_exact_[n].canonicalize();
    }
  }

  if (table.has_float()) {
    if (n_max > options.float_cap) {
      fail(ErrorCode::kResourceLimit, "float table to n = " + std::to_string(n_max) +
                                          " exceeds cap " + std::to_string(options.float_cap));
    }
    const std::vector<std::uint64_t> members = members_upto(spec, n_max);
    table.a_float_ = options.fast_path ? coefficients_online(members, n_max)
                                       : coefficients_direct(members, n_max);
  }
  return table;
}

double partial_sum(const CountTable& table, std::size_t n) {
  if (n > table.n_max()) {
    fail(ErrorCode::kOutOfRange, "partial sum to " + std::to_string(n) +
                                     " beyond table n_max " + std::to_string(table.n_max()));
  }
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double y = table.a_float(k) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

mpq_class partial_sum_exact(const CountTable& table, std::size_t n) {
  if (n > table.n_max()) {
    fail(ErrorCode::kOutOfRange, "partial sum to " + std::to_string(n) +
                                     " beyond table n_max " + std::to_string(table.n_max()));
  }
  // sum_k P_k / k! = (sum_k P_k n!/k!) / n!, built by Horner from k = 0 upward.
  mpz_class numerator = 0;
  mpz_class factorial = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      numerator *= static_cast<unsigned long>(k);
      factorial *= static_cast<unsigned long>(k);
    }
    numerator += table.count(k);
  }
  mpq_class result(numerator, factorial);
  result.canonicalize();
  return result;
}

void write_table_csv(const CountTable& table, std::ostream& out) {
  const bool exact = table.has_exact();
  out << (exact ? "n,P_n,a_n,T_n\n" : "n,a_n,T_n\n");
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t n = 0; n <= table.n_max(); ++n) {
    const double a = table.a_float(n);
    const double y = a - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    out << n << ',';
    if (exact) out << table.count(n).get_str() << ',';
    out << format_g17(a) << ',' << format_g17(sum) << '\n';
  }
}

}  // namespace primecycles
