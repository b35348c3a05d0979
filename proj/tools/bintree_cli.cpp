// bintree: exact and Monte Carlo valuation of path-dependent payoffs on a
// recombining binomial tree.
//
//   bintree price --method exact --payoff asian-put --N 20 --workers 8
//   bintree study --table pmc-variance --M-list 1,4,16,64 --reps 500
//   bintree bench --N-list 20,24 --M-list 1,2,4,8
//
// Exit codes: 0 ok, 2 usage/flag errors, 3 domain errors from the engines.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bintree/bench.hpp"
#include "bintree/errors.hpp"
#include "bintree/exact_engine.hpp"
#include "bintree/mc_engine.hpp"
#include "bintree/study.hpp"
#include "report.hpp"

namespace {

using namespace bintree;

constexpr int kUsageError = 2;
constexpr int kDomainError = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PricingFlags {
  std::string payoff = "euro-put";
  MarketInputs inputs{5.0, 10.0, 0.06, 0.30, 1.0, 16};
  std::uint64_t workers = 1;
  std::uint64_t samples = 1024;
  std::uint64_t seed = 0;
  std::uint64_t reps = 1;
  std::vector<double> probs;
  bool force_large = false;
  int threads = 0;
  std::optional<double> override_u;
  std::optional<double> override_p;
};

void add_pricing_flags(CLI::App& cmd, PricingFlags& f) {
  cmd.add_option("--payoff", f.payoff, "euro-call | euro-put | asian-put | lookback-put")
      ->check(CLI::IsMember({"euro-call", "euro-put", "asian-put", "lookback-put"}))
      ->capture_default_str();
  cmd.add_option("--S0", f.inputs.S0, "spot price")->capture_default_str();
  cmd.add_option("--K", f.inputs.K, "strike")->capture_default_str();
  cmd.add_option("--q", f.inputs.q, "annual risk-free rate")->capture_default_str();
  cmd.add_option("--sigma", f.inputs.sigma, "annual volatility")->capture_default_str();
  cmd.add_option("--T", f.inputs.T, "maturity in years")->capture_default_str();
  cmd.add_option("--N", f.inputs.N, "tree depth")->check(CLI::Range(1, kMaxDepth))->capture_default_str();
  cmd.add_option("--workers", f.workers, "worker ranks / strata M")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--samples", f.samples, "Monte Carlo sample size R")->capture_default_str();
  cmd.add_option("--seed", f.seed, "master seed")->capture_default_str();
  cmd.add_option("--probs", f.probs, "comma-separated per-step up-probabilities")->delimiter(',');
  cmd.add_option("--threads", f.threads, "OpenMP threads (0 = automatic)")->capture_default_str();
  cmd.add_flag("--force-large", f.force_large, "allow exact enumeration above N = 28");
  // Test-only lattice overrides, hidden from --help.
  cmd.add_option("--override-u", f.override_u)->group("");
  cmd.add_option("--override-p", f.override_p)->group("");
}

ValuationRequest build_request(const PricingFlags& f) {
  ValuationRequest req;
  req.inputs = f.inputs;
  req.params = f.probs.empty() ? derive_crr(f.inputs) : with_custom_probs(f.inputs, f.probs);
  req.params = with_overrides(std::move(req.params), f.override_u, f.override_p);
  req.payoff = *parse_payoff_kind(f.payoff);
  req.workers = f.workers;
  req.threads = f.threads;
  req.allow_large = f.force_large;
  return req;
}

McConfig build_config(const PricingFlags& f) {
  McConfig cfg;
  cfg.samples = f.samples;
  cfg.strata = f.workers;
  cfg.seed = f.seed;
  cfg.threads = f.threads;
  return cfg;
}

const std::map<std::string, Method> kMcMethods{
    {"mc", Method::Basic},
    {"pmc", Method::Partitioned},
    {"pmc-equal", Method::PartitionedEqual},
    {"smc", Method::Shared},
};

int cmd_price(const PricingFlags& f, const std::string& method, cli::Format format) {
  const bool exact = method == "exact" || method == "exact-serial";
  if (exact && f.inputs.N > kLargeEnumerationDepth && !f.force_large) {
    throw UsageError("--method " + method + " with N > " + std::to_string(kLargeEnumerationDepth) +
                     " requires --force-large");
  }
  const ValuationRequest req = build_request(f);

  cli::RunReport report;
  report.method = method;
  report.payoff = f.payoff;
  report.inputs = f.inputs;
  report.M = f.workers;
  report.seed = f.seed;
  report.reps = f.reps;

  const auto start = std::chrono::steady_clock::now();
  if (method == "exact") {
    report.value = value_exact_parallel(req);
  } else if (method == "exact-serial") {
    report.value = value_exact_serial(req);
  } else if (method == "leaf") {
    report.value = value_leaf_formula(req);
  } else {
    const Method m = kMcMethods.at(method);
    const McConfig cfg = build_config(f);
    if (f.reps > 1) {
      const StudySummary s = repeat_estimates(m, req, cfg, f.reps);
      report.value = s.mean_estimate;
      report.variance = s.mean_variance_estimate;
      report.empirical_variance = s.empirical_variance;
      report.R = f.samples;
    } else {
      const Estimate est = estimate(m, req, cfg);
      report.value = est.value;
      report.variance = est.variance;
      report.R = est.samples_used;
    }
    report.std_error = std::sqrt(report.variance);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  cli::write_report(std::cout, report, format);
  return 0;
}

int cmd_study(const PricingFlags& f, const std::string& table, const std::vector<std::uint64_t>& r_list,
              const std::vector<std::uint64_t>& m_list) {
  StudyTable kind = StudyTable::McConvergence;
  std::vector<std::uint64_t> values = r_list;
  if (table == "pmc-variance" || table == "smc-vs-pmc") {
    kind = table == "pmc-variance" ? StudyTable::PmcVariance : StudyTable::SmcVsPmc;
    values = m_list;
    if (values.empty()) throw UsageError("--table " + table + " requires --M-list");
  } else if (values.empty()) {
    throw UsageError("--table mc-convergence requires --R-list");
  }

  const ValuationRequest req = build_request(f);
  const auto rows = run_study(kind, req, build_config(f), values, f.reps);

  std::cout << "method," << (kind == StudyTable::McConvergence ? "R" : "M")
            << ",mean_estimate,mean_variance_estimate,empirical_variance\n";
  std::cout << std::setprecision(17);
  for (const auto& row : rows) {
    std::cout << to_string(row.method) << ',' << row.parameter << ',' << row.summary.mean_estimate
              << ',' << row.summary.mean_variance_estimate << ','
              << row.summary.empirical_variance << '\n';
  }
  return 0;
}

int cmd_bench(const PricingFlags& f, const std::vector<int>& n_list, std::vector<std::uint64_t> m_list,
              int repetitions, const std::string& format) {
  if (n_list.empty() || m_list.empty()) throw UsageError("bench requires --N-list and --M-list");
  std::sort(m_list.begin(), m_list.end());
  ValuationRequest tmpl;
  tmpl.inputs = f.inputs;
  tmpl.payoff = *parse_payoff_kind(f.payoff);
  std::vector<BenchPoint> grid;
  for (int n : n_list) {
    if (n > kLargeEnumerationDepth && !f.force_large) {
      throw UsageError("bench with N > " + std::to_string(kLargeEnumerationDepth) +
                       " requires --force-large");
    }
    for (auto m : m_list) grid.push_back({n, m});
  }
  const auto records = run_exact_bench(grid, tmpl, repetitions);
  if (format == "table") {
    write_bench_table(std::cout, records);
  } else {
    write_bench_csv(std::cout, records);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo valuation on recombining binomial trees"};
  app.require_subcommand(1);

  PricingFlags flags;
  std::string method = "exact";
  std::string format = "json";
  auto* price = app.add_subcommand("price", "value one option");
  add_pricing_flags(*price, flags);
  price->add_option("--method", method, "exact | exact-serial | leaf | mc | pmc | pmc-equal | smc")
      ->check(CLI::IsMember({"exact", "exact-serial", "leaf", "mc", "pmc", "pmc-equal", "smc"}))
      ->capture_default_str();
  price->add_option("--reps", flags.reps, "independent repetitions to average")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  price->add_option("--format", format, "json | csv | plain")
      ->check(CLI::IsMember({"json", "csv", "plain"}))
      ->capture_default_str();

  PricingFlags study_flags;
  study_flags.reps = 1000;
  study_flags.payoff = "asian-put";
  std::string table;
  std::vector<std::uint64_t> r_list;
  std::vector<std::uint64_t> m_list;
  auto* study = app.add_subcommand("study", "repeated Monte Carlo studies (CSV)");
  add_pricing_flags(*study, study_flags);
  study->add_option("--table", table, "mc-convergence | pmc-variance | smc-vs-pmc")
      ->required()
      ->check(CLI::IsMember({"mc-convergence", "pmc-variance", "smc-vs-pmc"}));
  study->add_option("--R-list", r_list, "sample sizes")->delimiter(',');
  study->add_option("--M-list", m_list, "strata counts")->delimiter(',');
  study->add_option("--reps", study_flags.reps, "repetitions per row")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  PricingFlags bench_flags;
  std::vector<int> bench_n;
  std::vector<std::uint64_t> bench_m;
  int bench_reps = 3;
  std::string bench_format = "csv";
  auto* bench = app.add_subcommand("bench", "time exact enumeration over an (N, M) grid");
  add_pricing_flags(*bench, bench_flags);
  bench->add_option("--N-list", bench_n, "tree depths")->delimiter(',')->required();
  bench->add_option("--M-list", bench_m, "worker counts")->delimiter(',')->required();
  bench->add_option("--bench-reps", bench_reps, "timed repetitions (median)")->capture_default_str();
  bench->add_option("--format", bench_format, "csv | table")
      ->check(CLI::IsMember({"csv", "table"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*price) {
      const cli::Format fmt = format == "csv"     ? cli::Format::Csv
                              : format == "plain" ? cli::Format::Plain
                                                  : cli::Format::Json;
      return cmd_price(flags, method, fmt);
    }
    if (*study) return cmd_study(study_flags, table, r_list, m_list);
    return cmd_bench(bench_flags, bench_n, bench_m, bench_reps, bench_format);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ValuationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainError;
  }
}
