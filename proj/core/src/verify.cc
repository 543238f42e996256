#include "primecycles/verify.h"

#include <algorithm>
#include <cmath>
#include <memory>

#include "primecycles/errors.h"

namespace primecycles {
namespace {

std::uint64_t max_of(std::span<const std::uint64_t> grid) {
  if (grid.empty()) fail(ErrorCode::kInvalidArgument, "empty grid");
  return *std::max_element(grid.begin(), grid.end());
}

void check_grid_against(const CountTable& table, std::span<const std::uint64_t> n_grid) {
  const std::uint64_t top = max_of(n_grid);
  if (top > table.n_max()) {
    fail(ErrorCode::kOutOfRange, "grid reaches n = " + std::to_string(top) +
                                     " but the table stops at " + std::to_string(table.n_max()));
  }
  for (std::uint64_t n : n_grid) {
    if (n < 2) fail(ErrorCode::kInvalidArgument, "grid values must be >= 2");
  }
}

std::string g(double v) { return format_g17(v); }

bool non_increasing(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1]) return false;
  }
  return true;
}

}  // namespace

ConvergenceRow make_row(double x, double exact, double model, double scaled_residual) {
  return ConvergenceRow{x, exact, model, exact / model, scaled_residual};
}

std::vector<ConvergenceRow> theorem1_table(const CountTable& table,
                                           std::span<const std::uint64_t> n_grid,
                                           const Constants& constants) {
  if (table.spec().kind() != CycleClassSpec::Kind::kPrimes) {
    fail(ErrorCode::kUnsupportedSpec, "theorem1_table needs the primes spec");
  }
  check_grid_against(table, n_grid);
  std::vector<ConvergenceRow> rows;
  for (std::uint64_t n : n_grid) {
    const double t_n = partial_sum(table, n);
    const double log_n = std::log(static_cast<double>(n));
    const double residual = (t_n / log_n - constants.e_to_c) * std::log(log_n);
    rows.push_back(make_row(static_cast<double>(n), t_n, model_theorem1(n, constants), residual));
  }
  return rows;
}

std::vector<ConvergenceRow> hlk_comparison_table(const CountTable& table,
                                                 std::span<const std::uint64_t> n_grid,
                                                 const Constants& constants) {
  check_grid_against(table, n_grid);
  std::vector<ConvergenceRow> rows;
  for (std::uint64_t n : n_grid) {
    const double t_n = partial_sum(table, n);
    const double model = odlyzko_sum_model(table.spec(), n, constants);
    const double ratio = t_n / model;
    rows.push_back(make_row(static_cast<double>(n), t_n, model,
                            (ratio - 1.0) * std::log(static_cast<double>(n))));
  }
  return rows;
}

SlowVariationReport slow_variation_check(std::span<const double> u_list,
                                         std::span<const double> t_grid) {
  if (u_list.empty() || t_grid.empty()) {
    fail(ErrorCode::kInvalidArgument, "slow_variation_check needs nonempty u and t lists");
  }
  for (double u : u_list) {
    if (!(u >= 0.1 && u <= 10.0)) {
      fail(ErrorCode::kInvalidArgument, "u values must lie in [0.1, 10], got " + g(u));
    }
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 1.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      fail(ErrorCode::kInvalidArgument, "t grid must be increasing and > 1");
    }
  }
  const double t_max = t_grid.back();
  if (t_max < 1e6) fail(ErrorCode::kInvalidArgument, "t grid must reach 1e6");

  SlowVariationReport report;
  for (double t : t_grid) {
    for (double u : u_list) {
      const double ratio = std::log(u * t) / std::log(t);
      report.rows.push_back({u, t, ratio});
      if (t == t_max) report.max_deviation = std::max(report.max_deviation, std::abs(ratio - 1.0));
    }
  }
  report.bound = std::log(10.0) / std::log(t_max);
  // The bound is attained exactly at u = 10 and u = 0.1; allow rounding.
  report.holds = report.max_deviation <= report.bound * (1.0 + 1e-12);
  return report;
}

std::vector<PhiEstimateRow> phi_estimate_table(std::span<const double> t_grid,
                                               const Constants& constants) {
  std::vector<PhiEstimateRow> rows;
  for (double t : t_grid) {
    const PhiSplit split = phi_split(t);
    PhiEstimateRow row;
    row.t = t;
    row.phi1 = split.phi1;
    row.phi2 = split.phi2;
    row.phi3 = split.phi3;
    row.phi = phi_at(t);
    row.recombination_error = std::abs(split.total() - row.phi) / row.phi;
    const double log_inv = std::log(1.0 / t);
    const double loglog = std::log(log_inv);
    row.phi1_residual = split.phi1 - loglog - constants.mertens_c;
    row.phi1_scaled = std::abs(row.phi1_residual) * log_inv / loglog;
    row.phi2_scaled = std::abs(split.phi2) * loglog;
    row.phi3_envelope = loglog / log_inv * std::exp(-log_inv / loglog);
    row.phi3_scaled = split.phi3 / row.phi3_envelope;
    rows.push_back(row);
  }
  return rows;
}

std::vector<PntRow> pnt_table(const PrimeTable& table, std::span<const std::uint64_t> k_grid) {
  std::vector<PntRow> rows;
  for (std::uint64_t k : k_grid) {
    if (k < 2) fail(ErrorCode::kInvalidArgument, "pnt_table needs k >= 2 (ln 1 = 0)");
    const std::uint64_t p = nth_prime(table, k);
    const double kd = static_cast<double>(k);
    rows.push_back({k, p, static_cast<double>(p) / (kd * std::log(kd))});
  }
  return rows;
}

std::vector<DerivativeRow> derivative_table(std::span<const double> z_grid) {
  std::vector<DerivativeRow> rows;
  for (double z : z_grid) {
    const double gap = 1.0 - z;
    const double log_inv_gap = std::log(1.0 / gap);
    for (int order = 1; order <= 3; ++order) {
      const double value = phi_deriv(z, order);
      const double c_k = order == 3 ? 2.0 : 1.0;
      rows.push_back({z, order, value, value * std::pow(gap, order) * log_inv_gap / c_k});
    }
  }
  return rows;
}

Report to_report(std::span<const ConvergenceRow> rows) {
  Report r{{"x", "exact", "model", "ratio", "scaled_residual"}, {}};
  for (const auto& row : rows) {
    r.rows.push_back({row.x, row.exact, row.model, row.ratio, row.scaled_residual});
  }
  return r;
}

Report to_report(std::span<const PhiEstimateRow> rows) {
  Report r{{"t", "phi1", "phi2", "phi3", "phi", "recombination_error", "phi1_residual",
            "phi1_scaled", "phi2_scaled", "phi3_envelope", "phi3_scaled"},
           {}};
  for (const auto& row : rows) {
    r.rows.push_back({row.t, row.phi1, row.phi2, row.phi3, row.phi, row.recombination_error,
                      row.phi1_residual, row.phi1_scaled, row.phi2_scaled, row.phi3_envelope,
                      row.phi3_scaled});
  }
  return r;
}

Report to_report(std::span<const PntRow> rows) {
  Report r{{"k", "p_k", "ratio"}, {}};
  for (const auto& row : rows) {
    r.rows.push_back({static_cast<double>(row.k), static_cast<double>(row.prime), row.ratio});
  }
  return r;
}

Report to_report(const SlowVariationReport& report) {
  Report r{{"u", "t", "ratio"}, {}};
  for (const auto& row : report.rows) r.rows.push_back({row.u, row.t, row.ratio});
  return r;
}

Report to_report(std::span<const DerivativeRow> rows) {
  Report r{{"z", "order", "value", "normalized"}, {}};
  for (const auto& row : rows) {
    r.rows.push_back({row.z, static_cast<double>(row.order), row.value, row.normalized});
  }
  return r;
}

std::vector<ConvergenceRow> convergence_rows(const Report& report) {
  const std::vector<std::string> expected{"x", "exact", "model", "ratio", "scaled_residual"};
  if (report.columns != expected) {
    fail(ErrorCode::kInvalidArgument, "report does not have convergence columns");
  }
  std::vector<ConvergenceRow> rows;
  for (const auto& r : report.rows) rows.push_back({r[0], r[1], r[2], r[3], r[4]});
  return rows;
}

std::vector<CheckResult> check_theorem1(std::span<const ConvergenceRow> rows,
                                        const VerifyConfig& config) {
  std::vector<CheckResult> out;
  double worst = 0.0;
  bool finite = true;
  for (const auto& row : rows) {
    worst = std::max(worst, std::abs(row.scaled_residual));
    finite = finite && std::isfinite(row.ratio) && row.ratio > 0.0;
  }
  out.push_back({"theorem1.residual_bound", worst <= config.theorem1_residual_bound,
                 "max |scaled_residual| = " + g(worst) + " (bound " +
                     g(config.theorem1_residual_bound) + ")"});
  out.push_back({"theorem1.ratio_finite", finite, "ratio column positive and finite"});
  std::vector<double> deviations;
  for (const auto& row : rows) {
    if (row.x >= 1000.0) deviations.push_back(std::abs(row.ratio - 1.0));
  }
  std::string detail = "|ratio - 1| for n >= 1000:";
  for (double d : deviations) detail += " " + g(d);
  out.push_back({"theorem1.ratio_trend", non_increasing(deviations), detail});
  return out;
}

std::vector<CheckResult> check_hlk(std::span<const ConvergenceRow> rows,
                                   const VerifyConfig& config) {
  std::vector<CheckResult> out;
  double worst = 0.0;
  for (const auto& row : rows) {
    if (row.x >= 10000.0) worst = std::max(worst, std::abs(row.ratio - 1.0));
  }
  out.push_back({"hlk.band", worst <= config.hlk_band,
                 "max |ratio - 1| for n >= 1e4 = " + g(worst)});
  if (rows.size() >= 2) {
    const double first = std::abs(rows.front().ratio - 1.0);
    const double last = std::abs(rows.back().ratio - 1.0);
    out.push_back({"hlk.trend", last <= first,
                   "|ratio - 1| first row " + g(first) + ", last row " + g(last)});
  }
  return out;
}

std::vector<CheckResult> check_phi_estimates(std::span<const PhiEstimateRow> rows,
                                             const VerifyConfig& config) {
  const double k = config.phi_safety_factor;
  bool recombine = true, phi1 = true, phi2 = true, phi3 = true, signs = true;
  std::string detail;
  for (const auto& row : rows) {
    const double log_inv = std::log(1.0 / row.t);
    const double loglog = std::log(log_inv);
    recombine = recombine && row.recombination_error <= config.recombination_tolerance;
    phi1 = phi1 && std::abs(row.phi1_residual) <= k * loglog / log_inv + k / log_inv;
    phi2 = phi2 && std::abs(row.phi2) <= k / loglog;
    phi3 = phi3 && row.phi3 <= k * row.phi3_envelope;
    signs = signs && row.phi1 >= 0.0 && row.phi2 <= 0.0 && row.phi3 >= 0.0;
  }
  return {
      {"phi.recombination", recombine, "phi1 + phi2 + phi3 vs phi(e^{-t})"},
      {"phi.phi1_bound", phi1, "|phi1 - ln ln(1/t) - c| <= k ln ln(1/t)/ln(1/t) + k/ln(1/t)"},
      {"phi.phi2_bound", phi2, "|phi2| <= k / ln ln(1/t)"},
      {"phi.phi3_bound", phi3, "phi3 <= k * envelope"},
      {"phi.signs", signs, "phi1 >= 0, phi2 <= 0, phi3 >= 0"},
  };
}

std::vector<CheckResult> check_pnt(std::span<const PntRow> rows) {
  bool above_one = true;
  std::vector<double> ratios;
  for (const auto& row : rows) {
    above_one = above_one && std::isfinite(row.ratio) && row.ratio > 1.0;
    ratios.push_back(row.ratio);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < ratios.size(); ++i) decreasing = decreasing && ratios[i] < ratios[i - 1];
  return {{"pnt.above_one", above_one, "p_k / (k ln k) > 1"},
          {"pnt.decreasing", decreasing, "p_k / (k ln k) strictly decreasing"}};
}

std::vector<CheckResult> check_derivatives(std::span<const DerivativeRow> rows) {
  std::vector<CheckResult> out;
  for (int order = 1; order <= 3; ++order) {
    std::vector<double> distance;
    double last = 0.0;
    for (const auto& row : rows) {
      if (row.order != order) continue;
      distance.push_back(std::abs(row.normalized - 1.0));
      last = row.normalized;
    }
    const std::string name = "derivatives.order" + std::to_string(order);
    out.push_back({name + ".band", last > 0.5 && last < 1.5,
                   "normalized value at the grid point closest to 1: " + g(last)});
    out.push_back({name + ".trend", !distance.empty() && distance.back() < distance.front(),
                   "moves toward 1 along the z grid"});
  }
  return out;
}

bool VerifyOutcome::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyOutcome run_verification(const VerifyConfig& config, std::span<const std::string> which,
                               const Constants& constants) {
  auto wants = [&](const std::string& name) {
    return std::find(which.begin(), which.end(), name) != which.end();
  };
  for (const auto& name : which) {
    const auto& known = verify_table_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      fail(ErrorCode::kInvalidArgument, "unknown verification table '" + name + "'");
    }
  }

  VerifyOutcome outcome;
  auto append = [&](std::vector<CheckResult> checks) {
    outcome.checks.insert(outcome.checks.end(), checks.begin(), checks.end());
  };

  const bool need_counts = wants("theorem1") || wants("hlk");
  std::uint64_t sieve_limit = wants("pnt") ? 16'000'000 : 2;
  const std::uint64_t n_max = need_counts ? max_of(config.n_grid) : 0;
  // log_egf at z = 1 - 1/n needs members up to about 25 n.
  sieve_limit = std::max<std::uint64_t>(sieve_limit, 30 * n_max + 100);
  std::shared_ptr<const PrimeTable> primes;
  if (need_counts || wants("pnt")) {
    primes = std::make_shared<const PrimeTable>(build_sieve(sieve_limit));
  }

  if (need_counts) {
    TableOptions options;
    options.mode = TableMode::kFloat;
    options.fast_path = config.fast_path;
    const CountTable table = build_table(CycleClassSpec::primes(primes), n_max, options);
    if (wants("theorem1")) {
      const auto rows = theorem1_table(table, config.n_grid, constants);
      outcome.reports.push_back({"theorem1", to_report(rows)});
      append(check_theorem1(rows, config));
    }
    if (wants("hlk")) {
      const auto rows = hlk_comparison_table(table, config.n_grid, constants);
      outcome.reports.push_back({"hlk", to_report(rows)});
      append(check_hlk(rows, config));
    }
  }
  if (wants("phi")) {
    const auto rows = phi_estimate_table(config.t_grid, constants);
    outcome.reports.push_back({"phi", to_report(rows)});
    append(check_phi_estimates(rows, config));
  }
  if (wants("derivatives")) {
    const auto rows = derivative_table(config.z_grid);
    outcome.reports.push_back({"derivatives", to_report(rows)});
    append(check_derivatives(rows));
  }
  if (wants("pnt")) {
    const auto rows = pnt_table(*primes, config.k_grid);
    outcome.reports.push_back({"pnt", to_report(rows)});
    append(check_pnt(rows));
  }
  if (wants("slow")) {
    const auto report = slow_variation_check(config.u_list, config.slow_t_grid);
    outcome.reports.push_back({"slow", to_report(report)});
    append({{"slow.variation", report.holds,
             "max |ln(ut)/ln t - 1| = " + g(report.max_deviation) + " <= " + g(report.bound)}});
  }
  return outcome;
}

}  // namespace primecycles
