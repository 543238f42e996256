#include "primecycles/cycle_classes.h"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "primecycles/errors.h"

namespace primecycles {
namespace {

std::shared_ptr<const PrimeTable> table_to(std::uint64_t limit) {
  return std::make_shared<const PrimeTable>(build_sieve(limit));
}

TEST(CycleClassesTest, Contains) {
  const auto primes = CycleClassSpec::primes(table_to(100));
  EXPECT_TRUE(contains(primes, 7));
  EXPECT_FALSE(contains(primes, 1));
  EXPECT_FALSE(contains(CycleClassSpec::residue_classes(2, {1}), 4));
  EXPECT_TRUE(contains(CycleClassSpec::residue_classes(2, {1}), 5));
  EXPECT_FALSE(contains(CycleClassSpec::explicit_set({1}), 2));
  EXPECT_TRUE(contains(CycleClassSpec::singleton(3), 3));
  EXPECT_TRUE(contains(CycleClassSpec::all(), 123456789));
}

TEST(CycleClassesTest, ContainsErrors) {
  const auto primes = CycleClassSpec::primes(table_to(100));
  EXPECT_THROW(contains(primes, 101), Error);
  try {
    contains(primes, 101);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
  EXPECT_THROW(contains(CycleClassSpec::all(), 0), Error);
}

TEST(CycleClassesTest, Density) {
  EXPECT_EQ(density(CycleClassSpec::primes(table_to(10))), (Rational{0, 1}));
  EXPECT_EQ(density(CycleClassSpec::all()), (Rational{1, 1}));
  EXPECT_EQ(density(CycleClassSpec::odd()), (Rational{1, 2}));
  EXPECT_EQ(density(CycleClassSpec::residue_classes(3, {1, 2})), (Rational{2, 3}));
  EXPECT_EQ(density(CycleClassSpec::residue_classes(4, {0, 2})), (Rational{1, 2}));
  EXPECT_EQ(density(CycleClassSpec::explicit_set({1, 2, 3})), (Rational{0, 1}));
  EXPECT_EQ(density(CycleClassSpec::singleton(5)), (Rational{0, 1}));
}

TEST(CycleClassesTest, EmpiricalDensityOfOddNumbers) {
  const auto odd = CycleClassSpec::odd();
  std::uint64_t in_a = 0;
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    in_a += contains(odd, n) ? 1 : 0;
    ASSERT_LE(std::abs(static_cast<double>(in_a) / n - 0.5), 1.0 / n);
  }
}

TEST(CycleClassesTest, HarmonicOffset) {
  EXPECT_EQ(harmonic_offset(CycleClassSpec::explicit_set({}), 5), 0.0);
  const double all = harmonic_offset(CycleClassSpec::all(), 1'000'000);
  // Error budget of plain ascending summation: n 2^-52 ln n.
  EXPECT_NEAR(all, testing::harmonic_minus_log_asymptotic(1e6), 1e6 * 0x1p-52 * std::log(1e6));
  EXPECT_NEAR(all, 0.5772156, 1e-5);
  EXPECT_GT(all, 0.57721);
  EXPECT_LT(all, 0.57722);

  // Mertens: sum_{p<=y} 1/p = ln ln y + 0.2614972... + o(1).
  const double primes = harmonic_offset(CycleClassSpec::primes(table_to(1'000'000)), 1'000'000);
  EXPECT_NEAR(primes, std::log(std::log(1e6)) + 0.2614972, 0.01);
  double direct = 0.0;
  for (std::uint64_t p : testing::trial_division_primes(10000)) direct += 1.0 / p;
  EXPECT_NEAR(harmonic_offset(CycleClassSpec::primes(table_to(10000)), 10000), direct, 1e-12);
}

TEST(CycleClassesTest, HarmonicOffsetCauchyDecay) {
  const auto all = CycleClassSpec::all();
  for (std::uint64_t n : {10u, 100u, 1000u, 12345u}) {
    EXPECT_LE(std::abs(harmonic_offset(all, n) - harmonic_offset(all, 2 * n)), 1.0 / n);
  }
}

TEST(CycleClassesTest, ParseRoundTrip) {
  for (const char* text : {"primes", "all", "odd", "even", "mod:3:1,2", "set:1,4,9", "set:",
                           "single:7"}) {
    EXPECT_EQ(parse_cycle_class(text, 100).to_string(), text);
  }
  EXPECT_EQ(parse_cycle_class("mod:2:1", 10).to_string(), "odd");
  EXPECT_EQ(parse_cycle_class("set:9,1,4,4", 10).to_string(), "set:1,4,9");
}

TEST(CycleClassesTest, ParseErrors) {
  for (const char* text : {"prime", "mod:0:1", "mod:3:3", "mod:3", "set:a", "set:0", "single:",
                           "", "mod:x:1"}) {
    try {
      parse_cycle_class(text, 100);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument) << text;
    }
  }
}

TEST(CycleClassesTest, MembersUpto) {
  EXPECT_EQ(members_upto(CycleClassSpec::even(), 9), (std::vector<std::uint64_t>{2, 4, 6, 8}));
  EXPECT_EQ(members_upto(CycleClassSpec::primes(table_to(30)), 20),
            (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19}));
  EXPECT_EQ(members_upto(CycleClassSpec::explicit_set({2, 50}), 20),
            (std::vector<std::uint64_t>{2}));
  EXPECT_THROW(members_upto(CycleClassSpec::primes(table_to(30)), 31), Error);
}

}  // namespace
}  // namespace primecycles
