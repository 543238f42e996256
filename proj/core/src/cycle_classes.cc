#include "primecycles/cycle_classes.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "primecycles/errors.h"

namespace primecycles {
namespace {

void sort_unique(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::uint64_t parse_uint(std::string_view text, std::string_view context) {
  std::uint64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    fail(ErrorCode::kInvalidArgument,
         "malformed integer '" + std::string(text) + "' in " + std::string(context));
  }
  return value;
}

std::vector<std::uint64_t> parse_list(std::string_view text, std::string_view context) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_uint(text.substr(start, comma - start), context));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

CycleClassSpec CycleClassSpec::primes(std::shared_ptr<const PrimeTable> table) {
  if (!table) fail(ErrorCode::kInvalidArgument, "prime spec needs a prime table");
  CycleClassSpec spec;
  spec.kind_ = Kind::kPrimes;
  spec.table_ = std::move(table);
  return spec;
}

CycleClassSpec CycleClassSpec::explicit_set(std::vector<std::uint64_t> members) {
  sort_unique(members);
  if (!members.empty() && members.front() == 0) {
    fail(ErrorCode::kInvalidArgument, "cycle lengths must be positive");
  }
  CycleClassSpec spec;
  spec.kind_ = Kind::kExplicitSet;
  spec.values_ = std::move(members);
  return spec;
}

CycleClassSpec CycleClassSpec::residue_classes(std::uint64_t modulus,
                                               std::vector<std::uint64_t> residues) {
  if (modulus == 0) fail(ErrorCode::kInvalidArgument, "modulus must be positive");
  for (auto& r : residues) {
    if (r >= modulus) {
      fail(ErrorCode::kInvalidArgument,
           "residue " + std::to_string(r) + " not reduced mod " + std::to_string(modulus));
    }
  }
  sort_unique(residues);
  CycleClassSpec spec;
  spec.kind_ = Kind::kResidueClasses;
  spec.modulus_ = modulus;
  spec.values_ = std::move(residues);
  return spec;
}

CycleClassSpec CycleClassSpec::all() {
  CycleClassSpec spec;
  spec.kind_ = Kind::kAll;
  return spec;
}

CycleClassSpec CycleClassSpec::singleton(std::uint64_t k) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "cycle lengths must be positive");
  CycleClassSpec spec;
  spec.kind_ = Kind::kSingleton;
  spec.values_ = {k};
  return spec;
}

std::uint64_t CycleClassSpec::support_limit() const noexcept {
  return kind_ == Kind::kPrimes ? table_->limit() : kUnboundedSupport;
}

std::string CycleClassSpec::to_string() const {
  switch (kind_) {
    case Kind::kPrimes: return "primes";
    case Kind::kAll: return "all";
    case Kind::kSingleton: return "single:" + std::to_string(values_.front());
    case Kind::kExplicitSet: return "set:" + join(values_);
    case Kind::kResidueClasses:
      if (modulus_ == 2 && values_ == std::vector<std::uint64_t>{1}) return "odd";
      if (modulus_ == 2 && values_ == std::vector<std::uint64_t>{0}) return "even";
      return "mod:" + std::to_string(modulus_) + ":" + join(values_);
  }
  return "?";
}

bool contains(const CycleClassSpec& spec, std::uint64_t k) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "cycle lengths start at 1");
  if (k > spec.support_limit()) {
    fail(ErrorCode::kOutOfRange, "membership of " + std::to_string(k) +
                                     " beyond support limit " +
                                     std::to_string(spec.support_limit()) + " of " +
                                     spec.to_string());
  }
  switch (spec.kind()) {
    case CycleClassSpec::Kind::kPrimes: return spec.prime_table()->test(k);
    case CycleClassSpec::Kind::kAll: return true;
    case CycleClassSpec::Kind::kSingleton:
    case CycleClassSpec::Kind::kExplicitSet:
      return std::binary_search(spec.members().begin(), spec.members().end(), k);
    case CycleClassSpec::Kind::kResidueClasses:
      return std::binary_search(spec.residues().begin(), spec.residues().end(),
                                k % spec.modulus());
  }
  return false;
}

std::optional<Rational> density(const CycleClassSpec& spec) {
  switch (spec.kind()) {
    case CycleClassSpec::Kind::kAll: return Rational{1, 1};
    case CycleClassSpec::Kind::kPrimes:
    case CycleClassSpec::Kind::kExplicitSet:
    case CycleClassSpec::Kind::kSingleton: return Rational{0, 1};
    case CycleClassSpec::Kind::kResidueClasses: {
      const auto num = static_cast<std::int64_t>(spec.residues().size());
      const auto den = static_cast<std::int64_t>(spec.modulus());
      const std::int64_t g = std::gcd(num, den);
      return num == 0 ? Rational{0, 1} : Rational{num / g, den / g};
    }
  }
  return std::nullopt;
}

std::vector<std::uint64_t> members_upto(const CycleClassSpec& spec, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n == 0) return out;
  if (n > spec.support_limit()) {
    fail(ErrorCode::kOutOfRange, "members up to " + std::to_string(n) +
                                     " exceed support limit " +
                                     std::to_string(spec.support_limit()) + " of " +
                                     spec.to_string());
  }
  switch (spec.kind()) {
    case CycleClassSpec::Kind::kPrimes: {
      const PrimeTable& table = *spec.prime_table();
      if (table.has_index()) {
        const auto ps = table.primes();
        out.assign(ps.begin(), std::upper_bound(ps.begin(), ps.end(), n));
      } else {
        for (std::uint64_t k = 2; k <= n; ++k) {
          if (table.test(k)) out.push_back(k);
        }
      }
      break;
    }
    case CycleClassSpec::Kind::kSingleton:
    case CycleClassSpec::Kind::kExplicitSet:
      for (std::uint64_t k : spec.members()) {
        if (k <= n) out.push_back(k);
      }
      break;
    default:
      for (std::uint64_t k = 1; k <= n; ++k) {
        if (contains(spec, k)) out.push_back(k);
      }
  }
  return out;
}

double harmonic_offset(const CycleClassSpec& spec, std::uint64_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "harmonic_offset needs n >= 1");
  const auto rho = density(spec);
  if (!rho) {
    fail(ErrorCode::kUnsupportedSpec,
         "harmonic_offset needs a declared density for " + spec.to_string());
  }
  double sum = 0.0;
  for (std::uint64_t k : members_upto(spec, n)) sum += 1.0 / static_cast<double>(k);
  return sum - rho->value() * std::log(static_cast<double>(n));
}

CycleClassSpec parse_cycle_class(std::string_view text, std::uint64_t sieve_limit) {
  if (text == "primes") {
    return CycleClassSpec::primes(std::make_shared<const PrimeTable>(build_sieve(sieve_limit)));
  }
  if (text == "all") return CycleClassSpec::all();
  if (text == "odd") return CycleClassSpec::odd();
  if (text == "even") return CycleClassSpec::even();
  if (text.starts_with("set:")) {
    return CycleClassSpec::explicit_set(parse_list(text.substr(4), text));
  }
  if (text.starts_with("single:")) {
    return CycleClassSpec::singleton(parse_uint(text.substr(7), text));
  }
  if (text.starts_with("mod:")) {
    const std::string_view rest = text.substr(4);
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) {
      fail(ErrorCode::kInvalidArgument, "expected mod:m:r1,r2,... got '" + std::string(text) + "'");
    }
    const std::uint64_t m = parse_uint(rest.substr(0, colon), text);
    return CycleClassSpec::residue_classes(m, parse_list(rest.substr(colon + 1), text));
  }
  fail(ErrorCode::kInvalidArgument, "unknown cycle class '" + std::string(text) + "'");
}

}  // namespace primecycles
