#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "primecycles/exact_enum.h"

namespace primecycles {

struct CycleTypeSample {
  std::size_t n = 0;
  // In draw order: the cycle through the smallest remaining element first.
  std::vector<std::uint64_t> lengths;
  std::uint64_t seed = 0;
};

// Pr[cycle containing a fixed element has length k] = a_{n-k} / (n a_n)
// for k in A(n), conditioned on every cycle length lying in A.
std::vector<std::pair<std::uint64_t, double>> first_cycle_distribution(
    const CountTable& table, std::size_t n);
std::vector<std::pair<std::uint64_t, mpq_class>> first_cycle_distribution_exact(
    const CountTable& table, std::size_t n);

// Rejection-free sampler over cycle types of S_{n,A}.
//
// Draws the first-cycle length, removes that many elements and recurses.
// Randomness comes from std::mt19937_64 (a twisted generalized feedback
// shift register) converted to [0,1) with 53 random bits, so a seed fixes
// the output on every platform.
class CycleTypeSampler {
 public:
  CycleTypeSampler(const CountTable& table, std::uint64_t seed);

  CycleTypeSample next(std::size_t n);

 private:
  double uniform();

  const CountTable* table_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

CycleTypeSample sample_cycle_type(const CountTable& table, std::size_t n,
                                  std::uint64_t seed);

}  // namespace primecycles
