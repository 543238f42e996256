#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "primecycles/primecycles.h"

namespace primecycles::cli {
namespace {

// Raised while turning parsed flags into a validated configuration.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string subcommand;
  std::string spec = "primes";
  std::size_t n = 0;
  std::string mode;
  std::string format;
  std::optional<std::uint64_t> sieve_limit;
  std::size_t exact_cap = kDefaultExactCap;
  bool fast_path = false;
  std::string out_path;
  // sample
  std::uint64_t seed = 0;
  std::size_t count = 1;
  // constants
  int terms = kDefaultMertensTerms;
  // phi
  std::optional<double> z;
  std::optional<double> t;
  int order = 0;
  bool egf = false;
  bool split = false;
  // verify
  std::vector<std::string> tables;
  std::vector<std::uint64_t> n_grid;
  std::vector<double> t_grid;
  std::string out_dir;
};

std::uint64_t default_sieve_limit(const CliConfig& config, std::uint64_t needed) {
  if (config.sieve_limit) return *config.sieve_limit;
  if (const char* env = std::getenv(kSieveLimitEnv)) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0') {
      throw UsageError(std::string(kSieveLimitEnv) + " is not an integer: '" + env + "'");
    }
    return v;
  }
  return std::max<std::uint64_t>(needed, 2);
}

CycleClassSpec resolve_spec(const CliConfig& config) {
  try {
    return parse_cycle_class(config.spec, default_sieve_limit(config, config.n));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) throw UsageError(e.what());
    throw;
  }
}

TableMode resolve_mode(const std::string& mode) {
  if (mode == "exact") return TableMode::kExact;
  if (mode == "float") return TableMode::kFloat;
  if (mode == "both") return TableMode::kBoth;
  throw UsageError("unknown --mode '" + mode + "' (expected exact, float or both)");
}

TableOptions table_options(const CliConfig& config) {
  TableOptions options;
  options.mode = resolve_mode(config.mode);
  options.exact_cap = config.exact_cap;
  options.fast_path = config.fast_path;
  return options;
}

std::string rational_string(const mpq_class& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

// 15 significant digits, then the shortest round-trip form of that value.
double round15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

void cmd_count(const CliConfig& config, std::ostream& out) {
  const TableOptions options = table_options(config);
  const CycleClassSpec spec = resolve_spec(config);
  if (options.mode == TableMode::kFloat) {
    const CountTable table = build_table(spec, config.n, options);
    // n! is exact in double through 22! and finite through 170!.
    double value = table.a_float(config.n);
    if (config.n <= 170) {
      for (std::size_t k = 2; k <= config.n; ++k) value *= static_cast<double>(k);
    } else {
      value = std::exp(std::log(value) + log_gamma(static_cast<double>(config.n) + 1));
    }
    if (!std::isfinite(value)) {
      fail(ErrorCode::kOutOfRange, "P_n overflows double precision; use --mode exact");
    }
    out << format_g17(table.a_float(config.n) == 0.0 ? 0.0 : value) << '\n';
    return;
  }
  out << count_exact(spec, config.n, config.exact_cap).get_str() << '\n';
}

void cmd_table(const CliConfig& config, std::ostream& out) {
  const CountTable table = build_table(resolve_spec(config), config.n, table_options(config));
  if (config.format == "csv") {
    write_table_csv(table, out);
    return;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t n = 0; n <= table.n_max(); ++n) {
    nlohmann::ordered_json row;
    row["n"] = n;
    if (table.has_exact()) row["P_n"] = table.count(n).get_str();
    row["a_n"] = table.a_float(n);
    row["T_n"] = partial_sum(table, n);
    rows.push_back(std::move(row));
  }
  out << rows.dump(2) << '\n';
}

void cmd_sum(const CliConfig& config, std::ostream& out) {
  const CountTable table = build_table(resolve_spec(config), config.n, table_options(config));
  if (table.mode() == TableMode::kExact) {
    out << rational_string(partial_sum_exact(table, config.n)) << '\n';
  } else {
    out << format_g17(partial_sum(table, config.n)) << '\n';
  }
}

void cmd_constants(const CliConfig& config, std::ostream& out) {
  const Constants c = compute_constants(config.terms);
  nlohmann::ordered_json doc;
  doc["euler_gamma"] = round15(c.euler_gamma);
  doc["mertens_c"] = round15(c.mertens_c);
  doc["e_to_c"] = round15(c.e_to_c);
  doc["method"] = c.method;
  doc["tail_bound"] = round15(c.tail_bound);
  out << doc.dump(2) << '\n';
}

void cmd_phi(const CliConfig& config, std::ostream& out) {
  if (config.z.has_value() == config.t.has_value()) {
    throw UsageError("phi needs exactly one of --z or --t");
  }
  if (config.split) {
    if (!config.t) throw UsageError("--split needs --t");
    const PhiSplit s = phi_split(*config.t);
    const Report report{{"t", "cutoff", "phi1", "phi2", "phi3", "total"},
                        {{s.t, s.cutoff, s.phi1, s.phi2, s.phi3, s.total()}}};
    emit_report(report, config.format == "json" ? ReportFormat::kJson : ReportFormat::kCsv, out);
    return;
  }
  const double z = config.z ? *config.z : std::exp(-*config.t);
  double value = 0.0;
  if (config.order > 0) {
    value = phi_deriv(z, config.order);
  } else if (config.t) {
    value = config.egf ? std::exp(phi_at(*config.t)) : phi_at(*config.t);
  } else {
    value = config.egf ? f_eval(z) : phi_eval(z);
  }
  out << format_g17(value) << '\n';
}

int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  VerifyConfig vc;
  vc.fast_path = config.fast_path;
  if (!config.n_grid.empty()) vc.n_grid = config.n_grid;
  if (!config.t_grid.empty()) vc.t_grid = config.t_grid;
  const std::vector<std::string> tables =
      config.tables.empty() || config.tables == std::vector<std::string>{"all"}
          ? verify_table_names()
          : config.tables;
  for (const auto& name : tables) {
    const auto& known = verify_table_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw UsageError("unknown --table '" + name + "'");
    }
  }
  if (config.format != "csv" && config.format != "json") {
    throw UsageError("verify --format must be csv or json");
  }
  const ReportFormat format = parse_report_format(config.format);

  const VerifyOutcome outcome = run_verification(vc, tables, compute_constants());
  for (const auto& named : outcome.reports) {
    if (!config.out_dir.empty()) {
      std::filesystem::create_directories(config.out_dir);
      emit_report(named.report, format,
                  std::filesystem::path(config.out_dir) / (named.name + "." + config.format));
    } else {
      out << "# " << named.name << '\n';
      emit_report(named.report, format, out);
    }
  }
  for (const auto& check : outcome.checks) {
    out << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
  }
  if (!outcome.all_passed()) {
    err << "verification failed:";
    for (const auto& check : outcome.checks) {
      if (!check.passed) err << ' ' << check.name;
    }
    err << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

void cmd_sample(const CliConfig& config, std::ostream& out) {
  const CountTable table = build_table(resolve_spec(config), config.n, table_options(config));
  CycleTypeSampler sampler(table, config.seed);
  for (std::size_t i = 0; i < config.count; ++i) {
    CycleTypeSample sample = sampler.next(config.n);
    std::sort(sample.lengths.rbegin(), sample.lengths.rend());
    for (std::size_t j = 0; j < sample.lengths.size(); ++j) {
      out << (j ? "," : "") << sample.lengths[j];
    }
    out << '\n';
  }
}

void add_common(CLI::App* sub, CliConfig& config) {
  sub->add_option("--sieve-limit", config.sieve_limit,
                  std::string("Prime sieve limit (default: $") + kSieveLimitEnv +
                      " or the smallest limit the command needs)")
      ->check(CLI::Range(std::uint64_t{2}, kDefaultSieveCap));
  sub->add_option("--exact-cap", config.exact_cap, "Largest n for exact arithmetic")
      ->capture_default_str();
  sub->add_option("--out", config.out_path, "Write output to this file instead of stdout");
}

void add_spec_n(CLI::App* sub, CliConfig& config) {
  sub->add_option("--spec", config.spec,
                  "Cycle-length set: primes, all, odd, even, mod:m:r1,r2,..., set:k1,..., "
                  "single:k")
      ->capture_default_str();
  sub->add_option("--n", config.n, "Permutation size")->required()->check(CLI::NonNegativeNumber);
  sub->add_option("--mode", config.mode, "exact, float or both (count: exact, else float)")
      ->check(CLI::IsMember({"exact", "float", "both"}));
  sub->add_flag("--fast", config.fast_path, "Use the online-convolution float path");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig config;
  CLI::App app{"Exact and asymptotic enumeration of permutations with restricted cycle lengths",
               "primecycles"};
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "Exact count P_{n,A}");
  add_spec_n(count, config);
  add_common(count, config);

  auto* table = app.add_subcommand("table", "Dump n, P_n, a_n, T_n for 0..n");
  add_spec_n(table, config);
  table->add_option("--format", config.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_common(table, config);

  auto* sum = app.add_subcommand("sum", "Partial sum T_n = sum_{k<=n} P_k/k!");
  add_spec_n(sum, config);
  add_common(sum, config);

  auto* constants = app.add_subcommand("constants", "Euler and Mertens constants as JSON");
  constants->add_option("--terms", config.terms, "Prime-zeta series terms")
      ->check(CLI::Range(10, 200))
      ->capture_default_str();
  add_common(constants, config);

  auto* phi = app.add_subcommand("phi", "phi(z) = sum_p z^p/p, its derivatives, f(z), split");
  phi->add_option("--z", config.z, "Argument in [0, 1 - 1e-9]");
  phi->add_option("--t", config.t, "Evaluate at z = e^{-t}");
  phi->add_option("--order", config.order, "Derivative order 0..3")->check(CLI::Range(0, 3));
  phi->add_flag("--egf", config.egf, "Print f = exp(phi) instead of phi");
  phi->add_flag("--split", config.split, "Print the phi1/phi2/phi3 decomposition (needs --t)");
  phi->add_option("--format", config.format, "csv or json (for --split)")
      ->check(CLI::IsMember({"csv", "json"}));
  add_common(phi, config);

  auto* verify = app.add_subcommand("verify", "Convergence tables and their bound checks");
  verify->add_option("--table", config.tables,
                     "Tables to build: all, theorem1, hlk, phi, derivatives, pnt, slow");
  verify->add_option("--n-grid", config.n_grid, "n grid for theorem1/hlk")->delimiter(',');
  verify->add_option("--t-grid", config.t_grid, "t grid for phi")->delimiter(',');
  verify->add_flag("--fast", config.fast_path, "Use the online-convolution float path");
  verify->add_option("--format", config.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--out-dir", config.out_dir, "Write one report file per table here");
  add_common(verify, config);

  auto* sample = app.add_subcommand("sample", "Uniform cycle types of S_{n,A}");
  add_spec_n(sample, config);
  sample->add_option("--seed", config.seed, "mt19937_64 seed")->capture_default_str();
  sample->add_option("--count", config.count, "Number of samples")->capture_default_str();
  add_common(sample, config);

  config.format = "csv";

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (config.mode.empty()) config.mode = *count ? "exact" : "float";

  std::ostringstream buffer;
  int status = kExitOk;
  try {
    if (*count) cmd_count(config, buffer);
    else if (*table) cmd_table(config, buffer);
    else if (*sum) cmd_sum(config, buffer);
    else if (*constants) cmd_constants(config, buffer);
    else if (*phi) cmd_phi(config, buffer);
    else if (*verify) status = cmd_verify(config, buffer, err);
    else if (*sample) cmd_sample(config, buffer);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  if (config.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << buffer.str())) {
      err << "error: cannot write '" << config.out_path << "'\n";
      return kExitFailure;
    }
  }
  return status;
}

}  // namespace primecycles::cli
