#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace primecycles {

inline constexpr std::uint64_t kDefaultSieveCap = std::uint64_t{1} << 31;

// Above this limit the table is filled segment by segment.
inline constexpr std::uint64_t kSegmentedSieveThreshold = 10'000'000;

struct SieveOptions {
  std::uint64_t memory_cap = kDefaultSieveCap;
  bool with_index = true;
};

// Immutable prime membership over [0, limit] with O(1) counting.
//
// Membership is a packed bitset; `rank_` stores the number of primes below
// each 64-bit word so prime_count and nth_prime never rescan the sieve.
class PrimeTable {
 public:
  std::uint64_t limit() const noexcept { return limit_; }
  bool has_index() const noexcept { return has_index_; }

  // Sorted primes <= limit(). Empty when built without an index.
  std::span<const std::uint32_t> primes() const noexcept { return index_; }

  // Unchecked; callers go through is_prime / prime_count.
  bool test(std::uint64_t k) const noexcept {
    return (bits_[k >> 6] >> (k & 63)) & 1u;
  }
  std::uint64_t count_upto(std::uint64_t y) const noexcept;
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t select(std::uint64_t k) const noexcept;

 private:
  friend PrimeTable build_sieve(std::uint64_t, const SieveOptions&);

  std::uint64_t limit_ = 0;
  std::uint64_t total_ = 0;
  bool has_index_ = false;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint32_t> index_;
};

PrimeTable build_sieve(std::uint64_t limit, const SieveOptions& options = {});

// Throws out-of-range when k > table.limit().
bool is_prime(const PrimeTable& table, std::uint64_t k);

// pi(y).
std::uint64_t prime_count(const PrimeTable& table, std::uint64_t y);

// The k-th smallest prime, 1-based.
std::uint64_t nth_prime(const PrimeTable& table, std::uint64_t k);

// Streams the primes in [lo, hi] in ascending order through `fn`, one
// segment at a time, without materializing the full range. Memory use is
// O(sqrt(hi) + segment size), so hi may far exceed the table cap.
void for_each_prime_segment(
    std::uint64_t lo, std::uint64_t hi,
    const std::function<void(std::span<const std::uint64_t>)>& fn);

}  // namespace primecycles
