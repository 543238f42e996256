#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "primecycles/analytic.h"
#include "primecycles/exact_enum.h"
#include "primecycles/report.h"

namespace primecycles {

// One row of a convergence table. `ratio` is always exact / model as
// computed from the stored doubles.
struct ConvergenceRow {
  double x = 0.0;
  double exact = 0.0;
  double model = 0.0;
  double ratio = 0.0;
  double scaled_residual = 0.0;
};

ConvergenceRow make_row(double x, double exact, double model, double scaled_residual);

// T_n against e^c ln n; scaled_residual = (T_n / ln n - e^c) ln ln n.
std::vector<ConvergenceRow> theorem1_table(const CountTable& table,
                                           std::span<const std::uint64_t> n_grid,
                                           const Constants& constants);

// T_n against f_A(1 - 1/n) / Gamma(rho + 1); scaled_residual = (ratio - 1) ln n.
std::vector<ConvergenceRow> hlk_comparison_table(const CountTable& table,
                                                 std::span<const std::uint64_t> n_grid,
                                                 const Constants& constants);

struct SlowVariationRow {
  double u = 0.0;
  double t = 0.0;
  double ratio = 0.0;  // ln(u t) / ln t
};

struct SlowVariationReport {
  std::vector<SlowVariationRow> rows;
  double max_deviation = 0.0;  // max_u |ratio - 1| at the largest t
  double bound = 0.0;          // ln 10 / ln(max t)
  bool holds = false;
};

SlowVariationReport slow_variation_check(std::span<const double> u_list,
                                         std::span<const double> t_grid);

struct PhiEstimateRow {
  double t = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi3 = 0.0;
  double phi = 0.0;                    // phi(e^{-t}) evaluated independently
  double recombination_error = 0.0;    // |phi1 + phi2 + phi3 - phi| / phi
  double phi1_residual = 0.0;          // phi1 - ln ln(1/t) - c
  double phi1_scaled = 0.0;            // |phi1_residual| ln(1/t) / ln ln(1/t)
  double phi2_scaled = 0.0;            // |phi2| ln ln(1/t)
  double phi3_envelope = 0.0;          // (ln ln(1/t)/ln(1/t)) e^{-ln(1/t)/ln ln(1/t)}
  double phi3_scaled = 0.0;            // phi3 / envelope
};

std::vector<PhiEstimateRow> phi_estimate_table(std::span<const double> t_grid,
                                               const Constants& constants);

struct PntRow {
  std::uint64_t k = 0;
  std::uint64_t prime = 0;
  double ratio = 0.0;  // p_k / (k ln k)
};

std::vector<PntRow> pnt_table(const PrimeTable& table, std::span<const std::uint64_t> k_grid);

struct DerivativeRow {
  double z = 0.0;
  int order = 0;
  double value = 0.0;
  // phi^{(k)}(z) (1-z)^k ln(1/(1-z)) / c_k with c_1 = c_2 = 1, c_3 = 2.
  double normalized = 0.0;
};

std::vector<DerivativeRow> derivative_table(std::span<const double> z_grid);

Report to_report(std::span<const ConvergenceRow> rows);
Report to_report(std::span<const PhiEstimateRow> rows);
Report to_report(std::span<const PntRow> rows);
Report to_report(const SlowVariationReport& report);
Report to_report(std::span<const DerivativeRow> rows);
std::vector<ConvergenceRow> convergence_rows(const Report& report);

struct VerifyConfig {
  std::vector<std::uint64_t> n_grid{100, 1000, 10000, 100000};
  std::vector<double> t_grid{1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  std::vector<double> u_list{0.1, 0.5, 1.0, 2.0, 10.0};
  std::vector<double> slow_t_grid{1e2, 1e3, 1e4, 1e5, 1e6};
  std::vector<std::uint64_t> k_grid{1000, 10000, 100000, 1000000};
  std::vector<double> z_grid{1.0 - 1e-3, 1.0 - 1e-4, 1.0 - 1e-5, 1.0 - 1e-6};
  // Safety factors stand in for the unspecified O(.) constants.
  double theorem1_residual_bound = 2.0;
  double phi_safety_factor = 5.0;
  double hlk_band = 0.1;
  double recombination_tolerance = 1e-9;
  bool fast_path = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> check_theorem1(std::span<const ConvergenceRow> rows,
                                        const VerifyConfig& config);
std::vector<CheckResult> check_hlk(std::span<const ConvergenceRow> rows,
                                   const VerifyConfig& config);
std::vector<CheckResult> check_phi_estimates(std::span<const PhiEstimateRow> rows,
                                             const VerifyConfig& config);
std::vector<CheckResult> check_pnt(std::span<const PntRow> rows);
std::vector<CheckResult> check_derivatives(std::span<const DerivativeRow> rows);

struct NamedReport {
  std::string name;
  Report report;
};

struct VerifyOutcome {
  std::vector<NamedReport> reports;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

inline const std::vector<std::string>& verify_table_names() {
  static const std::vector<std::string> names{"theorem1", "hlk",  "phi",
                                              "derivatives", "pnt", "slow"};
  return names;
}

// Builds whatever tables `which` names (see verify_table_names) and runs
// their bound checks.
VerifyOutcome run_verification(const VerifyConfig& config,
                               std::span<const std::string> which,
                               const Constants& constants);

}  // namespace primecycles
