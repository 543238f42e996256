#include "primecycles/sampler.h"

#include <cmath>
#include <string>

#include "primecycles/errors.h"

namespace primecycles {
namespace {

constexpr double kRenormalizationTolerance = 1e-9;

void require_support(const CountTable& table, std::size_t n, bool empty) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "first-cycle distribution needs n >= 1");
  if (n > table.n_max()) {
    fail(ErrorCode::kOutOfRange, "n = " + std::to_string(n) + " beyond table n_max " +
                                     std::to_string(table.n_max()));
  }
  if (empty) {
    fail(ErrorCode::kEmptySupport, "no permutation of " + std::to_string(n) +
                                       " has all cycle lengths in " +
                                       table.spec().to_string());
  }
}

}  // namespace

std::vector<std::pair<std::uint64_t, double>> first_cycle_distribution(
    const CountTable& table, std::size_t n) {
  require_support(table, n, false);
  const double a_n = table.a_float(n);
  require_support(table, n, !(a_n > 0.0));
  std::vector<std::pair<std::uint64_t, double>> out;
  const double denom = static_cast<double>(n) * a_n;
  for (std::uint64_t k : members_upto(table.spec(), n)) {
    const double w = table.a_float(n - k);
    if (w > 0.0) out.emplace_back(k, w / denom);
  }
  return out;
}

std::vector<std::pair<std::uint64_t, mpq_class>> first_cycle_distribution_exact(
    const CountTable& table, std::size_t n) {
  require_support(table, n, false);
  const mpq_class& a_n = table.a_exact(n);
  require_support(table, n, sgn(a_n) == 0);
  std::vector<std::pair<std::uint64_t, mpq_class>> out;
  const mpq_class denom = a_n * static_cast<unsigned long>(n);
  for (std::uint64_t k : members_upto(table.spec(), n)) {
    const mpq_class& w = table.a_exact(n - k);
    if (sgn(w) != 0) {
      mpq_class p = w / denom;
      p.canonicalize();
      out.emplace_back(k, std::move(p));
    }
  }
  return out;
}

CycleTypeSampler::CycleTypeSampler(const CountTable& table, std::uint64_t seed)
    : table_(&table), seed_(seed), rng_(seed) {}

double CycleTypeSampler::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

CycleTypeSample CycleTypeSampler::next(std::size_t n) {
  CycleTypeSample sample;
  sample.n = n;
  sample.seed = seed_;
  if (n == 0) return sample;
  // Validate the top level up front so an empty support fails before any draw.
  first_cycle_distribution(*table_, n);

  std::size_t remaining = n;
  while (remaining > 0) {
    const auto dist = first_cycle_distribution(*table_, remaining);
    double total = 0.0;
    for (const auto& entry : dist) total += entry.second;
    if (std::abs(total - 1.0) > kRenormalizationTolerance) {
      fail(ErrorCode::kInternal, "first-cycle probabilities at n = " +
                                     std::to_string(remaining) + " sum to " +
                                     std::to_string(total));
    }
    const double u = uniform() * total;
    double cumulative = 0.0;
    std::uint64_t chosen = dist.back().first;
    for (const auto& [k, p] : dist) {
      cumulative += p;
      if (u < cumulative) {
        chosen = k;
        break;
      }
    }
    sample.lengths.push_back(chosen);
    remaining -= chosen;
  }
  return sample;
}

CycleTypeSample sample_cycle_type(const CountTable& table, std::size_t n,
                                  std::uint64_t seed) {
  return CycleTypeSampler(table, seed).next(n);
}

}  // namespace primecycles
