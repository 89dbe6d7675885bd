// Command-line front end: correlation reports, up-set pair scans, the
// anti-correlated pair sweep, open-question experiments, t-up-set scans,
// and the self-check invariant suite.
//
// Exit codes: 0 success, 1 invariant violation, 2 bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "permcorr/engine.hpp"
#include "permcorr/json_io.hpp"

namespace {

using namespace permcorr;

constexpr std::uint64_t kDefaultSelfCheckSeed = 20240601;

Json load_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '{') return Json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open '" + arg + "'");
  Json out;
  in >> out;
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::invalid_argument("cannot write '" + path + "'");
  return file;
}

int run_correlate(int n, const std::string& measure_arg, const std::string& family_a,
                  const std::string& family_b, bool use_float) {
  Json mspec = load_json_arg(measure_arg);
  PermSet a = family_from_json(n, load_json_arg(family_a));
  PermSet b = family_from_json(n, load_json_arg(family_b));
  Json out;
  if (use_float) {
    MeasureD mu = measure_from_json_float(n, mspec);
    out = correlation_report_to_json(correlate(mu, a, b));
  } else {
    MeasureQ mu = measure_from_json_exact(n, mspec);
    out = correlation_report_to_json(correlate(mu, a, b));
  }
  out["measure"] = measure_desc(mspec);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_scan(int n, const std::string& order_name, const std::string& measure_arg, const std::string& mode,
             std::uint64_t pairs, double density, std::uint64_t limit, bool seed_given, std::uint64_t seed,
             unsigned threads, bool use_float) {
  OrderKind kind = OrderKind::parse(order_name);
  ScanOptions opts;
  opts.threads = threads;
  if (mode == "exhaustive") {
    if (n > 4) throw std::invalid_argument("exhaustive scans are limited to n <= 4");
    opts.exhaustive = true;
    opts.limit = limit;
  } else if (mode == "random") {
    if (n > 10) throw std::invalid_argument("random scans are limited to n <= 10");
    if (!seed_given) throw std::invalid_argument("random scans need --seed for reproducibility");
    opts.exhaustive = false;
    opts.pair_count = pairs;
    opts.density = density;
    opts.seed = seed;
  } else {
    throw std::invalid_argument("mode must be exhaustive or random");
  }
  Json mspec = load_json_arg(measure_arg);
  Order order(n, kind);
  Json out;
  if (use_float) {
    MeasureD mu = measure_from_json_float(n, mspec);
    out = scan_report_to_json(scan_up_set_pairs(order, mu, opts, measure_desc(mspec)));
  } else {
    MeasureQ mu = measure_from_json_exact(n, mspec);
    out = scan_report_to_json(scan_up_set_pairs(order, mu, opts, measure_desc(mspec)));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_thm2(const std::string& alpha_text, const std::string& beta_text, const std::string& n_list_text,
             const std::string& out_path, std::uint64_t mc_samples, std::uint64_t seed) {
  Rational alpha = parse_rational(alpha_text);
  Rational beta = parse_rational(beta_text);
  std::vector<int> n_list = parse_int_list(n_list_text);
  std::vector<AntiPairSweepRow> rows = anti_pair_sweep(alpha, beta, n_list, mc_samples, seed);
  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  out << "n,density_a,density_b,density_ab,lower_bound\n";
  for (const AntiPairSweepRow& row : rows) {
    out << row.n << ',' << format_rational(row.density_a) << ',' << format_rational(row.density_b) << ','
        << format_rational(row.density_ab) << ',' << format_rational(row.lower_bound) << "\n";
  }
  return 0;
}

int run_openq(int q_id, int n, const std::string& q_param, bool use_float) {
  if (q_id < 1 || q_id > 3) throw std::invalid_argument("--q must be 1, 2 or 3");
  OpenQuestion q = static_cast<OpenQuestion>(q_id);
  Json out;
  if (use_float) {
    out = scan_report_to_json(open_question_experiment<double>(q, n, to_double(parse_rational(q_param))));
  } else {
    out = scan_report_to_json(open_question_experiment<Rational>(q, n, parse_rational(q_param)));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_tscan(int n, const std::string& t_list_text, std::uint64_t trials, double density, bool seed_given,
              std::uint64_t seed, const std::string& out_path) {
  if (!seed_given) throw std::invalid_argument("tscan needs --seed for reproducibility");
  std::vector<int> t_list = parse_int_list(t_list_text);
  std::vector<TBandScanRow> rows = t_up_set_experiment(n, t_list, density, trials, seed);
  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  out << "t,trials,min_slack,mean_slack\n";
  for (const TBandScanRow& row : rows)
    out << row.t << ',' << row.trials << ',' << format_rational(row.min_slack) << ','
        << format_rational(row.mean_slack) << "\n";
  return 0;
}

int run_selfcheck(std::uint64_t seed) {
  SelfCheckReport report = selfcheck(seed);
  for (const CheckResult& c : report.checks) {
    if (c.passed) {
      std::cout << "ok   " << c.name << "\n";
    } else {
      std::cout << "FAIL " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    }
  }
  std::cout << (report.all_passed ? "selfcheck passed" : "selfcheck FAILED") << "\n";
  return report.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation experiments for permutation up-sets"};
  app.require_subcommand(1);

  int n = 3;
  std::string measure_arg = R"({"measure":"uniform"})";
  std::string family_a, family_b;
  bool use_float = false;

  CLI::App* correlate_cmd = app.add_subcommand("correlate", "exact or float correlation of two families");
  correlate_cmd->add_option("--n", n, "ground set size")->required();
  correlate_cmd->add_option("--measure", measure_arg, "measure spec (file or inline JSON)");
  correlate_cmd->add_option("--family-a", family_a, "family spec (file or inline JSON)")->required();
  correlate_cmd->add_option("--family-b", family_b, "family spec (file or inline JSON)")->required();
  bool flag_exact = false;
  correlate_cmd->add_flag("--float", use_float, "use double arithmetic");
  correlate_cmd->add_flag("--exact", flag_exact, "use exact rationals (default)");

  std::string order_name = "strong", scan_mode = "exhaustive";
  std::uint64_t pairs = 1000, scan_limit = 100000, seed = 0;
  double density = 0.3;
  bool seed_given = false;
  CLI::App* scan_cmd = app.add_subcommand("scan", "minimum correlation slack over up-set pairs");
  scan_cmd->add_option("--n", n, "ground set size")->required();
  scan_cmd->add_option("--order", order_name, "strong|weak|grid|t:K");
  scan_cmd->add_option("--measure", measure_arg, "measure spec (file or inline JSON)");
  scan_cmd->add_option("--mode", scan_mode, "exhaustive|random");
  scan_cmd->add_option("--pairs", pairs, "random mode: number of pairs");
  scan_cmd->add_option("--density", density, "random mode: Bernoulli seed density");
  scan_cmd->add_option("--limit", scan_limit, "exhaustive mode: cap on enumerated up-sets");
  scan_cmd->add_option("--seed", seed, "PRNG seed (required in random mode)")->each([&seed_given](const std::string&) {
    seed_given = true;
  });
  unsigned scan_threads = 1;
  scan_cmd->add_option("--threads", scan_threads, "worker threads (0 = all cores); reports do not depend on it");
  scan_cmd->add_flag("--float", use_float, "use double arithmetic");

  std::string alpha_text = "1/2", beta_text = "1/2", n_list_text = "4,6,8", out_path;
  std::uint64_t mc_samples = 200000, thm2_seed = 1;
  CLI::App* thm2_cmd = app.add_subcommand("thm2", "anti-correlated weak up-set pair sweep (CSV)");
  thm2_cmd->add_option("--alpha", alpha_text, "alpha in (0,1), e.g. 1/2");
  thm2_cmd->add_option("--beta", beta_text, "beta in (0,1)");
  thm2_cmd->add_option("--n-list", n_list_text, "comma-separated n values");
  thm2_cmd->add_option("--out", out_path, "CSV path ('-' for stdout)");
  thm2_cmd->add_option("--mc-samples", mc_samples, "samples per row beyond the exhaustive cap");
  thm2_cmd->add_option("--mc-seed", thm2_seed, "seed for Monte Carlo rows");

  int q_id = 1;
  std::string q_param = "1/2";
  CLI::App* openq_cmd = app.add_subcommand("openq", "spatial-measure experiments (report only)");
  openq_cmd->add_option("--q", q_id, "question id: 1, 2 or 3")->required();
  openq_cmd->add_option("--n", n, "ground set size")->required();
  openq_cmd->add_option("--qparam", q_param, "q parameter in (0,1]");
  openq_cmd->add_flag("--float", use_float, "use double arithmetic");

  std::string t_list_text = "1";
  std::uint64_t trials = 100;
  CLI::App* tscan_cmd = app.add_subcommand("tscan", "correlation across the t-limited order family (CSV)");
  tscan_cmd->add_option("--n", n, "ground set size")->required();
  tscan_cmd->add_option("--t-list", t_list_text, "comma-separated t values in [1,n]");
  tscan_cmd->add_option("--trials", trials, "random pairs per t");
  tscan_cmd->add_option("--density", density, "Bernoulli seed density");
  tscan_cmd->add_option("--seed", seed, "PRNG seed (required)")->each([&seed_given](const std::string&) {
    seed_given = true;
  });
  tscan_cmd->add_option("--out", out_path, "CSV path ('-' for stdout)");

  std::uint64_t selfcheck_seed = kDefaultSelfCheckSeed;
  CLI::App* selfcheck_cmd = app.add_subcommand("selfcheck", "run the full invariant suite");
  selfcheck_cmd->add_option("--seed", selfcheck_seed, "PRNG seed (fixed default for reproducibility)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (correlate_cmd->parsed())
      return run_correlate(n, measure_arg, family_a, family_b, use_float);
    if (scan_cmd->parsed())
      return run_scan(n, order_name, measure_arg, scan_mode, pairs, density, scan_limit, seed_given, seed,
                      scan_threads, use_float);
    if (thm2_cmd->parsed())
      return run_thm2(alpha_text, beta_text, n_list_text, out_path, mc_samples, thm2_seed);
    if (openq_cmd->parsed()) return run_openq(q_id, n, q_param, use_float);
    if (tscan_cmd->parsed())
      return run_tscan(n, t_list_text, trials, density, seed_given, seed, out_path);
    if (selfcheck_cmd->parsed()) return run_selfcheck(selfcheck_seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
