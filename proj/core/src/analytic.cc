#include "primecycles/analytic.h"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "primecycles/errors.h"

namespace primecycles {
namespace {

constexpr double kPhiAbsoluteTolerance = 1e-15;
constexpr double kDerivRelativeTolerance = 1e-12;
constexpr double kLogEgfTolerance = 1e-12;

// B_2, B_4, ..., B_20.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,        -1.0 / 30.0,        1.0 / 42.0,    -1.0 / 30.0,
    5.0 / 66.0,       -691.0 / 2730.0,    7.0 / 6.0,     -3617.0 / 510.0,
    43867.0 / 798.0,  -174611.0 / 330.0};

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

void check_phi_argument(double z) {
  if (!(z >= 0.0 && z <= kMaxPhiArgument)) {
    fail(ErrorCode::kOutOfDomain, "phi argument z = " + format_double(z) +
                                      " outside [0, 1 - 1e-9]; the prime cutoff ~31/(1-z) is "
                                      "capped there");
  }
}

void check_split_t(double t) {
  if (!(t > 0.0 && t < kMaxSplitT)) {
    fail(ErrorCode::kOutOfDomain,
         "t = " + format_double(t) + " outside (0, e^{-e}) = (0, 0.06599)");
  }
}

// Sums term(p) over primes p <= P, extending P geometrically until
// accept(P, sum) holds. Segments are summed separately and then combined
// in order, so the result is independent of segment boundaries in P.
template <class Term, class Accept>
long double adaptive_prime_sum(std::uint64_t initial_limit, Term term, Accept accept) {
  long double total = 0.0L;
  std::uint64_t done = 1;
  std::uint64_t limit = std::max<std::uint64_t>(initial_limit, 16);
  while (true) {
    for_each_prime_segment(done + 1, limit, [&](std::span<const std::uint64_t> ps) {
      long double segment = 0.0L;
      for (std::uint64_t p : ps) segment += term(p);
      total += segment;
    });
    done = limit;
    if (accept(limit, static_cast<double>(total))) return total;
    limit += limit / 4;
  }
}

// Geometric tail bound for sum_{m > P} e^{-mt} / m.
double phi_tail(std::uint64_t limit, double t) {
  const double next = static_cast<double>(limit + 1);
  return std::exp(-next * t) / (next * -std::expm1(-t));
}

}  // namespace

double zeta_minus_one(double s) {
  if (!(s >= 1.5)) {
    fail(ErrorCode::kOutOfDomain, "zeta(s) implemented for s >= 1.5, got " + format_double(s));
  }
  // Euler-Maclaurin with N chosen so successive correction terms shrink by
  // at least a factor (s + 2j) / (2 pi N) < 1/2.
  const int n_terms = 10 + static_cast<int>(std::ceil(s / 2.0));
  const double big_n = static_cast<double>(n_terms);
  long double sum = 0.0L;
  for (int k = n_terms - 1; k >= 2; --k) sum += std::pow(static_cast<long double>(k), -s);
  long double tail = std::pow(big_n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(big_n, -s);
  // Rising product s (s+1) ... (s+2j-2) times N^{-s-2j+1} / (2j)!.
  long double factor = s * std::pow(big_n, -s - 1.0) / 2.0;
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    tail += kBernoulli[j] * factor;
    const double m = 2.0 * static_cast<double>(j + 1);
    factor *= (s + m - 1.0) * (s + m) / ((m + 1.0) * (m + 2.0) * big_n * big_n);
  }
  return static_cast<double>(sum + tail);
}

double zeta(double s) { return 1.0 + zeta_minus_one(s); }

double prime_zeta(double s) {
  if (!(s >= 2.0)) {
    fail(ErrorCode::kOutOfDomain, "prime_zeta(s) implemented for s >= 2, got " + format_double(s));
  }
  // ln zeta(js) ~ 2^{-js}; stop once that is below 2^{-64} of the leading term.
  long double sum = 0.0L;
  for (int j = 1; static_cast<double>(j) * s <= s + 64.0; ++j) {
    const int mu = moebius(j);
    if (mu == 0) continue;
    sum += static_cast<long double>(mu) / j * std::log1p(zeta_minus_one(j * s));
  }
  return static_cast<double>(sum);
}

MertensEstimate mertens_direct(const PrimeTable& table, std::uint64_t limit) {
  if (limit < 2) fail(ErrorCode::kInvalidArgument, "mertens_direct needs limit >= 2");
  if (limit > table.limit()) {
    fail(ErrorCode::kOutOfRange, "mertens_direct limit " + std::to_string(limit) +
                                     " beyond sieve limit " + std::to_string(table.limit()));
  }
  long double sum = 0.0L;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (!table.test(p)) continue;
    const double inv = 1.0 / static_cast<double>(p);
    sum += static_cast<long double>(std::log1p(-inv)) + inv;
  }
  MertensEstimate out;
  out.estimate = static_cast<double>(kEulerGamma + sum);
  // |ln(1-1/p) + 1/p| <= 1/p^2 and sum_{m > L} 1/m^2 <= 1/(L-1).
  out.tail_bound = 1.0 / static_cast<double>(limit - 1);
  return out;
}

double mertens_zeta(int k_max) {
  if (k_max < 10) fail(ErrorCode::kInvalidArgument, "mertens_zeta needs k_max >= 10");
  long double sum = 0.0L;
  for (int k = k_max; k >= 2; --k) sum += prime_zeta(k) / k;
  return static_cast<double>(kEulerGamma - sum);
}

Constants compute_constants(int k_max) {
  Constants c;
  c.euler_gamma = kEulerGamma;
  c.mertens_c = mertens_zeta(k_max);
  c.e_to_c = std::exp(c.mertens_c);
  c.method = "prime-zeta series gamma - sum_{k=2}^{" + std::to_string(k_max) +
             "} P(k)/k, P(s) by Moebius inversion of ln zeta(js)";
  c.tail_bound = std::ldexp(1.0, 1 - k_max);
  return c;
}

double phi_at(double t) {
  if (!(t > 0.0)) fail(ErrorCode::kOutOfDomain, "phi_at needs t > 0");
  if (t >= std::numeric_limits<double>::infinity()) return 0.0;
  const auto initial = static_cast<std::uint64_t>(std::ceil(16.0 / t));
  const long double sum = adaptive_prime_sum(
      initial,
      [t](std::uint64_t p) {
        const double pd = static_cast<double>(p);
        return static_cast<long double>(std::exp(-pd * t) / pd);
      },
      [t](std::uint64_t limit, double) { return phi_tail(limit, t) <= kPhiAbsoluteTolerance; });
  return static_cast<double>(sum);
}

double phi_eval(double z) {
  check_phi_argument(z);
  if (z == 0.0) return 0.0;
  return phi_at(-std::log1p(z - 1.0));
}

double f_eval(double z) { return std::exp(phi_eval(z)); }

double phi_deriv(double z, int order) {
  check_phi_argument(z);
  if (order < 1 || order > 3) {
    fail(ErrorCode::kInvalidArgument, "phi_deriv order must be 1, 2 or 3");
  }
  // Coefficient of z^{p-order}: (p-1)(p-2)...(p-order+1).
  auto coefficient = [order](double p) {
    double c = 1.0;
    for (int i = 1; i < order; ++i) c *= p - i;
    return c;
  };
  if (z == 0.0) {
    // Only the p = order term survives; 1 is not prime.
    return order == 1 ? 0.0 : coefficient(order);
  }
  const double log_z = std::log1p(z - 1.0);
  const auto initial = static_cast<std::uint64_t>(std::ceil(40.0 / (1.0 - z)));
  const int degree = order - 1;
  const long double sum = adaptive_prime_sum(
      initial,
      [&](std::uint64_t p) {
        const double pd = static_cast<double>(p);
        return static_cast<long double>(coefficient(pd) * std::exp((pd - order) * log_z));
      },
      [&](std::uint64_t limit, double partial) {
        // Terms m^degree z^{m-order} for m > P; ratio of consecutive terms
        // is at most r = z ((P+2)/(P+1))^degree.
        const double next = static_cast<double>(limit + 1);
        const double r = z * std::pow((next + 1.0) / next, degree);
        if (r >= 1.0) return false;
        const double first = std::pow(next, degree) * std::exp((next - order) * log_z);
        return first / (1.0 - r) <= kDerivRelativeTolerance * partial;
      });
  return static_cast<double>(sum);
}

PhiSplit phi_split(double t) {
  check_split_t(t);
  const double log_inv_t = std::log(1.0 / t);
  const double loglog_inv_t = std::log(log_inv_t);
  PhiSplit split;
  split.t = t;
  split.cutoff = (log_inv_t / t) / loglog_inv_t;

  long double phi1 = 0.0L, phi2 = 0.0L, phi3 = 0.0L;
  std::uint64_t done = 1;
  std::uint64_t limit = static_cast<std::uint64_t>(std::ceil(16.0 / t));
  while (true) {
    for_each_prime_segment(done + 1, limit, [&](std::span<const std::uint64_t> ps) {
      long double s1 = 0.0L, s2 = 0.0L, s3 = 0.0L;
      for (std::uint64_t p : ps) {
        const double pd = static_cast<double>(p);
        if (pd <= split.cutoff) {
          s1 += 1.0 / pd;
          s2 -= -std::expm1(-pd * t) / pd;
        } else {
          s3 += std::exp(-pd * t) / pd;
        }
      }
      phi1 += s1;
      phi2 += s2;
      phi3 += s3;
    });
    done = limit;
    if (static_cast<double>(limit) >= split.cutoff && phi_tail(limit, t) <= kPhiAbsoluteTolerance) {
      break;
    }
    limit += limit / 4;
  }
  split.phi1 = static_cast<double>(phi1);
  split.phi2 = static_cast<double>(phi2);
  split.phi3 = static_cast<double>(phi3);
  return split;
}

double model_theorem1(std::uint64_t n, const Constants& constants) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "model_theorem1 needs n >= 2");
  return constants.e_to_c * std::log(static_cast<double>(n));
}

double model_f_asym(double t, const Constants& constants) {
  check_split_t(t);
  return constants.e_to_c * std::log(1.0 / t);
}

double yakimiv_log_model(const CycleClassSpec& spec, std::uint64_t n,
                         const Constants& constants) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "yakimiv_log_model needs n >= 2");
  const auto rho_opt = density(spec);
  if (!rho_opt || rho_opt->num <= 0) {
    fail(ErrorCode::kUnsupportedSpec,
         "the positive-density model needs rho > 0; " + spec.to_string() + " has rho = 0");
  }
  const double rho = rho_opt->value();
  const double nd = static_cast<double>(n);
  return log_gamma(nd + 1.0) + (rho - 1.0) * std::log(nd) + harmonic_offset(spec, n) -
         constants.euler_gamma * rho - log_gamma(rho);
}

double log_egf(const CycleClassSpec& spec, double z) {
  if (!(z >= 0.0 && z < 1.0)) {
    fail(ErrorCode::kOutOfDomain, "log_egf needs z in [0, 1), got " + format_double(z));
  }
  if (z == 0.0) return 0.0;
  const double log_z = std::log1p(z - 1.0);
  const double one_minus_z = 1.0 - z;
  // Smallest K with z^{K+1} / ((K+1)(1-z)) <= tolerance.
  std::uint64_t cutoff = 1;
  while (true) {
    const double next = static_cast<double>(cutoff + 1);
    if (std::exp(next * log_z) / (next * one_minus_z) <= kLogEgfTolerance) break;
    cutoff = cutoff < 64 ? cutoff + 1 : cutoff + cutoff / 8;
  }
  if (cutoff > spec.support_limit()) {
    fail(ErrorCode::kOutOfRange, "log_egf at z = " + format_double(z) + " needs members up to " +
                                     std::to_string(cutoff) + ", beyond support limit " +
                                     std::to_string(spec.support_limit()));
  }
  auto term = [log_z](std::uint64_t k) {
    const double kd = static_cast<double>(k);
    return static_cast<long double>(std::exp(kd * log_z) / kd);
  };
  long double sum = 0.0L;
  switch (spec.kind()) {
    case CycleClassSpec::Kind::kPrimes:
      for (std::uint64_t p = 2; p <= cutoff; ++p) {
        if (spec.prime_table()->test(p)) sum += term(p);
      }
      break;
    case CycleClassSpec::Kind::kExplicitSet:
    case CycleClassSpec::Kind::kSingleton:
      for (std::uint64_t k : spec.members()) sum += term(k);
      break;
    case CycleClassSpec::Kind::kAll:
      for (std::uint64_t k = 1; k <= cutoff; ++k) sum += term(k);
      break;
    case CycleClassSpec::Kind::kResidueClasses:
      for (std::uint64_t k = 1; k <= cutoff; ++k) {
        if (contains(spec, k)) sum += term(k);
      }
      break;
  }
  return static_cast<double>(sum);
}

double odlyzko_sum_model(const CycleClassSpec& spec, std::uint64_t n,
                         const Constants&) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "odlyzko_sum_model needs n >= 2");
  const auto rho = density(spec);
  if (!rho) {
    fail(ErrorCode::kUnsupportedSpec, "odlyzko_sum_model needs a declared density");
  }
  const double z = 1.0 - 1.0 / static_cast<double>(n);
  return std::exp(log_egf(spec, z) - log_gamma(rho->value() + 1.0));
}

double log_gamma(double x) {
  if (!(x > 0.0)) fail(ErrorCode::kOutOfDomain, "log_gamma needs x > 0, got " + format_double(x));
  return std::lgamma(x);
}

}  // namespace primecycles
