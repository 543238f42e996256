#include "primecycles/sampler.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "oracles.h"
#include "primecycles/errors.h"

namespace primecycles {
namespace {

CycleClassSpec primes_to(std::uint64_t limit) {
  return CycleClassSpec::primes(std::make_shared<const PrimeTable>(build_sieve(limit)));
}

CountTable exact_table(const CycleClassSpec& spec, std::size_t n_max) {
  TableOptions options;
  options.mode = TableMode::kBoth;
  return build_table(spec, n_max, options);
}

using Distribution = std::vector<std::pair<std::uint64_t, mpq_class>>;

TEST(SamplerTest, FirstCycleDistributionSmallN) {
  const CountTable table = exact_table(primes_to(50), 10);
  EXPECT_EQ(first_cycle_distribution_exact(table, 5),
            (Distribution{{2, mpq_class(2, 11)}, {3, mpq_class(3, 11)}, {5, mpq_class(6, 11)}}));
  EXPECT_EQ(first_cycle_distribution_exact(table, 2), (Distribution{{2, 1}}));
  EXPECT_EQ(first_cycle_distribution_exact(table, 3), (Distribution{{3, 1}}));
  EXPECT_EQ(first_cycle_distribution_exact(table, 4), (Distribution{{2, 1}}));

  const auto floats = first_cycle_distribution(table, 5);
  ASSERT_EQ(floats.size(), 3u);
  EXPECT_NEAR(floats[2].second, 6.0 / 11.0, 1e-15);
}

TEST(SamplerTest, DistributionsSumToOne) {
  const CountTable table = exact_table(primes_to(200), 150);
  for (std::size_t n = 2; n <= 150; ++n) {
    mpq_class total = 0;
    for (const auto& [k, p] : first_cycle_distribution_exact(table, n)) total += p;
    ASSERT_EQ(total, 1) << n;
    double ftotal = 0.0;
    for (const auto& [k, p] : first_cycle_distribution(table, n)) ftotal += p;
    ASSERT_NEAR(ftotal, 1.0, 1e-12) << n;
  }
}

// Exact law of the sampled multiset, by expanding every draw sequence.
void expand(const CountTable& table, std::size_t remaining, const mpq_class& weight,
            std::vector<std::uint64_t>& path, std::map<testing::CycleType, mpq_class>& out) {
  if (remaining == 0) {
    testing::CycleType type = path;
    std::sort(type.rbegin(), type.rend());
    out[type] += weight;
    return;
  }
  for (const auto& [k, p] : first_cycle_distribution_exact(table, remaining)) {
    path.push_back(k);
    expand(table, remaining - k, weight * p, path, out);
    path.pop_back();
  }
}

TEST(SamplerTest, InducedLawMatchesClassSizes) {
  for (const auto& spec : {primes_to(20), CycleClassSpec::odd(), CycleClassSpec::all()}) {
    const CountTable table = exact_table(spec, 7);
    const auto allowed = [&](std::uint64_t k) { return contains(spec, k); };
    for (std::size_t n = 2; n <= 7; ++n) {
      const auto classes = testing::cycle_type_classes(n, allowed);
      mpz_class total = 0;
      for (const auto& [type, size] : classes) total += size;
      std::map<testing::CycleType, mpq_class> law;
      std::vector<std::uint64_t> path;
      expand(table, n, 1, path, law);
      ASSERT_EQ(law.size(), classes.size()) << spec.to_string() << " " << n;
      for (const auto& [type, size] : classes) {
        mpq_class expected(size, total);
        expected.canonicalize();
        EXPECT_EQ(law[type], expected) << spec.to_string() << " " << n;
      }
    }
  }
}

TEST(SamplerTest, EmpiricalFrequencyOfFiveCycle) {
  const CountTable table = exact_table(primes_to(50), 5);
  CycleTypeSampler sampler(table, 12345);
  constexpr int kDraws = 100000;
  int five_cycles = 0;
  for (int i = 0; i < kDraws; ++i) {
    const auto sample = sampler.next(5);
    if (sample.lengths.size() == 1) ++five_cycles;
  }
  const double p = 6.0 / 11.0;
  const double sigma = std::sqrt(p * (1 - p) / kDraws);
  EXPECT_NEAR(static_cast<double>(five_cycles) / kDraws, p, 3 * sigma);
}

TEST(SamplerTest, FourAlwaysSplitsIntoTwoTransposition) {
  const CountTable table = exact_table(primes_to(50), 4);
  CycleTypeSampler sampler(table, 1);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sampler.next(4).lengths, (std::vector<std::uint64_t>{2, 2}));
  }
}

TEST(SamplerTest, SamplesAreValidAndReproducible) {
  const auto spec = primes_to(2000);
  const CountTable table = build_table(spec, 1000);
  for (std::uint64_t seed : {0ull, 42ull, 0xdeadbeefull}) {
    const auto a = sample_cycle_type(table, 1000, seed);
    const auto b = sample_cycle_type(table, 1000, seed);
    EXPECT_EQ(a.lengths, b.lengths);
    EXPECT_EQ(a.seed, seed);
    std::uint64_t sum = 0;
    for (auto k : a.lengths) {
      EXPECT_TRUE(testing::trial_division_is_prime(k)) << k;
      sum += k;
    }
    EXPECT_EQ(sum, 1000u);
  }
  EXPECT_NE(sample_cycle_type(table, 1000, 1).lengths, sample_cycle_type(table, 1000, 2).lengths);
}

TEST(SamplerTest, ErrorPaths) {
  const CountTable table = exact_table(primes_to(50), 10);
  try {
    sample_cycle_type(table, 1, 0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySupport);
  }
  try {
    sample_cycle_type(table, 11, 0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
  EXPECT_TRUE(sample_cycle_type(table, 0, 0).lengths.empty());
}

}  // namespace
}  // namespace primecycles
