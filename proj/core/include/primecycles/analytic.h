#pragma once

#include <cstdint>
#include <string>

#include "primecycles/cycle_classes.h"
#include "primecycles/primes.h"

namespace primecycles {

// Euler's constant to 20 digits (OEIS A001620).
inline constexpr double kEulerGamma = 0.57721566490153286061;

inline constexpr int kDefaultMertensTerms = 60;

// Largest z accepted by the phi family; keeps the prime cutoff near 3e10.
inline constexpr double kMaxPhiArgument = 1.0 - 1e-9;

struct Constants {
  double euler_gamma = kEulerGamma;
  double mertens_c = 0.0;
  double e_to_c = 0.0;
  std::string method;
  double tail_bound = 0.0;
};

// gamma, Mertens' constant via mertens_zeta(k_max) and e^c.
Constants compute_constants(int k_max = kDefaultMertensTerms);

// Riemann zeta for s >= 1.5 by Euler-Maclaurin summation.
double zeta(double s);
// zeta(s) - 1 without cancellation, for large s.
double zeta_minus_one(double s);

// P(s) = sum_p p^-s = sum_{j>=1} mu(j)/j ln zeta(js), s >= 2.
double prime_zeta(double s);

struct MertensEstimate {
  double estimate = 0.0;
  double tail_bound = 0.0;
};

// c = gamma + sum_{p<=limit} (ln(1-1/p) + 1/p), with |c - estimate| <= tail_bound.
MertensEstimate mertens_direct(const PrimeTable& table, std::uint64_t limit);

// c = gamma - sum_{k=2}^{k_max} P(k)/k; truncation error <= 2^{1-k_max}.
double mertens_zeta(int k_max = kDefaultMertensTerms);

// phi(z) = sum_p z^p / p on [0, 1 - 1e-9], absolute truncation error <= 1e-15.
double phi_eval(double z);
// phi(e^{-t}), evaluated in t directly.
double phi_at(double t);

// Derivatives of order 1, 2 or 3, relative truncation error <= 1e-12.
double phi_deriv(double z, int order);

// f(z) = exp(phi(z)), the EGF of permutations with prime cycle lengths.
double f_eval(double z);

// Smallest domain value for t-based functions is exclusive 0; the largest is
// e^{-e}, where ln ln ln(1/t) stops being defined.
inline constexpr double kMaxSplitT = 0.065988035845312537;  // exp(-e)

struct PhiSplit {
  double t = 0.0;
  double cutoff = 0.0;  // y(t) = (ln(1/t) / t) / ln ln(1/t)
  double phi1 = 0.0;    // sum_{p <= y} 1/p
  double phi2 = 0.0;    // -sum_{p <= y} (1 - e^{-pt})/p
  double phi3 = 0.0;    // sum_{p > y} e^{-pt}/p
  double total() const { return phi1 + phi2 + phi3; }
};

PhiSplit phi_split(double t);

// e^c ln n.
double model_theorem1(std::uint64_t n, const Constants& constants);

// e^c ln(1/t).
double model_f_asym(double t, const Constants& constants);

// ln( n! n^{rho-1} e^{L(n) - gamma rho} / Gamma(rho) ), rho in (0, 1].
double yakimiv_log_model(const CycleClassSpec& spec, std::uint64_t n,
                         const Constants& constants);

// f_A(1 - 1/n) / Gamma(rho + 1).
double odlyzko_sum_model(const CycleClassSpec& spec, std::uint64_t n,
                         const Constants& constants);

// sum_{k in A} z^k / k for z in [0, 1), truncated with tail <= 1e-12.
double log_egf(const CycleClassSpec& spec, double z);

double log_gamma(double x);

}  // namespace primecycles
