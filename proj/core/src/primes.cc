#include "primecycles/primes.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "primecycles/errors.h"

namespace primecycles {
namespace {

// Odd numbers per segment of the streaming sieve (2^18 bytes of flags).
constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 18;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Plain byte sieve; used for base primes and small tables.
std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<std::uint8_t> composite(limit + 1, 0);
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = 1;
  }
  for (std::uint64_t k = 2; k <= limit; ++k) {
    if (!composite[k]) out.push_back(static_cast<std::uint32_t>(k));
  }
  return out;
}

void set_bit(std::vector<std::uint64_t>& bits, std::uint64_t k) {
  bits[k >> 6] |= std::uint64_t{1} << (k & 63);
}

}  // namespace

std::uint64_t PrimeTable::count_upto(std::uint64_t y) const noexcept {
  const std::uint64_t word = y >> 6;
  const unsigned shift = static_cast<unsigned>(y & 63);
  const std::uint64_t mask =
      shift == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (shift + 1)) - 1);
  return rank_[word] + static_cast<std::uint64_t>(std::popcount(bits_[word] & mask));
}

std::uint64_t PrimeTable::select(std::uint64_t k) const noexcept {
  if (has_index_) return index_[k - 1];
  // Last word whose rank is < k holds the k-th prime.
  auto it = std::lower_bound(rank_.begin(), rank_.end(), k);
  const auto word = static_cast<std::uint64_t>(std::distance(rank_.begin(), it)) - 1;
  std::uint64_t remaining = k - rank_[word];
  std::uint64_t w = bits_[word];
  while (--remaining > 0) w &= w - 1;
  return (word << 6) + static_cast<std::uint64_t>(std::countr_zero(w));
}

PrimeTable build_sieve(std::uint64_t limit, const SieveOptions& options) {
  if (limit < 2) {
    fail(ErrorCode::kInvalidArgument,
         "sieve limit must be at least 2, got " + std::to_string(limit));
  }
  if (limit > options.memory_cap) {
    fail(ErrorCode::kResourceLimit,
         "sieve limit " + std::to_string(limit) + " exceeds memory cap " +
             std::to_string(options.memory_cap));
  }

  PrimeTable table;
  table.limit_ = limit;
  const std::uint64_t words = (limit >> 6) + 1;
  table.bits_.assign(words, 0);

  if (limit <= kSegmentedSieveThreshold) {
    for (std::uint32_t p : small_primes(limit)) set_bit(table.bits_, p);
  } else {
    for_each_prime_segment(2, limit, [&](std::span<const std::uint64_t> ps) {
      for (std::uint64_t p : ps) set_bit(table.bits_, p);
    });
  }

  table.rank_.resize(words);
  std::uint64_t running = 0;
  for (std::uint64_t w = 0; w < words; ++w) {
    table.rank_[w] = static_cast<std::uint32_t>(running);
    running += static_cast<std::uint64_t>(std::popcount(table.bits_[w]));
  }
  table.total_ = running;

  if (options.with_index) {
    table.index_.reserve(running);
    for (std::uint64_t w = 0; w < words; ++w) {
      std::uint64_t bits = table.bits_[w];
      while (bits != 0) {
        table.index_.push_back(
            static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    table.has_index_ = true;
  }
  return table;
}

bool is_prime(const PrimeTable& table, std::uint64_t k) {
  if (k > table.limit()) {
    fail(ErrorCode::kOutOfRange, "is_prime(" + std::to_string(k) +
                                     ") beyond sieve limit " +
                                     std::to_string(table.limit()));
  }
  return table.test(k);
}

std::uint64_t prime_count(const PrimeTable& table, std::uint64_t y) {
  if (y > table.limit()) {
    fail(ErrorCode::kOutOfRange, "prime_count(" + std::to_string(y) +
                                     ") beyond sieve limit " +
                                     std::to_string(table.limit()));
  }
  return table.count_upto(y);
}

std::uint64_t nth_prime(const PrimeTable& table, std::uint64_t k) {
  if (k == 0 || k > table.total()) {
    fail(ErrorCode::kOutOfRange,
         "nth_prime(" + std::to_string(k) + "): table holds " +
             std::to_string(table.total()) + " primes");
  }
  return table.select(k);
}

void for_each_prime_segment(
    std::uint64_t lo, std::uint64_t hi,
    const std::function<void(std::span<const std::uint64_t>)>& fn) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<std::uint64_t>(lo, 2);

  std::vector<std::uint64_t> out;
  if (lo == 2) {
    out.push_back(2);
    fn(out);
    out.clear();
    lo = 3;
    if (hi < 3) return;
  }

  // Odd base primes and, for each, the next odd multiple to strike.
  const std::vector<std::uint32_t> base = small_primes(isqrt(hi));
  std::vector<std::uint64_t> base_odd;
  std::vector<std::uint64_t> next;
  const std::uint64_t first_odd = lo | 1;
  for (std::uint32_t p32 : base) {
    const std::uint64_t p = p32;
    if (p == 2) continue;
    std::uint64_t start = std::max(p * p, ((first_odd + p - 1) / p) * p);
    if ((start & 1) == 0) start += p;
    base_odd.push_back(p);
    next.push_back(start);
  }

  std::vector<std::uint8_t> composite(kSegmentOdds);
  out.reserve(kSegmentOdds / 4);
  // Segment covers odd numbers seg_lo, seg_lo+2, ..., seg_lo + 2*(len-1).
  for (std::uint64_t seg_lo = first_odd; seg_lo <= hi; seg_lo += 2 * kSegmentOdds) {
    const std::uint64_t len = std::min(kSegmentOdds, (hi - seg_lo) / 2 + 1);
    const std::uint64_t seg_end = seg_lo + 2 * len;  // exclusive
    std::fill_n(composite.begin(), len, 0);
    for (std::size_t i = 0; i < base_odd.size(); ++i) {
      const std::uint64_t step = 2 * base_odd[i];
      std::uint64_t m = next[i];
      for (; m < seg_end; m += step) composite[(m - seg_lo) >> 1] = 1;
      next[i] = m;
    }
    out.clear();
    for (std::uint64_t i = 0; i < len; ++i) {
      if (!composite[i]) out.push_back(seg_lo + 2 * i);
    }
    // 1 is never prime; it only shows up when lo <= 1, which was excluded.
    if (!out.empty()) fn(out);
  }
}

}  // namespace primecycles
