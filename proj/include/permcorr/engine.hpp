#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "permcorr/chains.hpp"
#include "permcorr/families.hpp"
#include "permcorr/measures.hpp"
#include "permcorr/orders.hpp"
#include "permcorr/permset.hpp"
#include "permcorr/rational.hpp"
#include "permcorr/rng.hpp"

namespace permcorr {

inline constexpr double kFloatSlackTolerance = 1e-9;

enum class ReportMode { exact, monte_carlo };

template <class S>
struct CorrelationReport {
  int n = 0;
  S p_ab = S(0), p_a = S(0), p_b = S(0);
  S slack = S(0);  // p_ab - p_a * p_b
  bool ratio_defined = false;
  S ratio = S(0);  // p_ab / (p_a * p_b) when defined
  ReportMode mode = ReportMode::exact;
  std::uint64_t samples = 0;            // monte_carlo only
  double ci_low = 0.0, ci_high = 0.0;   // Wilson 95% interval on p_ab
};

/// Validates the Frechet bounds (p_ab <= min(p_a,p_b), p_ab >= p_a+p_b-1)
/// before returning; violations are internal errors.
template <class S>
CorrelationReport<S> make_correlation_report(int n, S p_ab, S p_a, S p_b, ReportMode mode,
                                             std::uint64_t samples = 0, double ci_low = 0.0,
                                             double ci_high = 0.0) {
  const S tol = ScalarOps<S>::exact ? S(0) : ScalarOps<S>::from_ratio(1, 1000000000);
  S upper = p_a < p_b ? p_a : p_b;
  S lower = p_a + p_b - S(1);
  if (p_ab < S(0) - tol || p_ab > upper + tol || p_ab < lower - tol)
    throw std::logic_error("correlation report violates Frechet bounds");
  CorrelationReport<S> r;
  r.n = n;
  r.p_ab = p_ab;
  r.p_a = p_a;
  r.p_b = p_b;
  r.slack = p_ab - p_a * p_b;
  S denom = p_a * p_b;
  if (denom > S(0)) {
    r.ratio_defined = true;
    r.ratio = p_ab / denom;
  }
  r.mode = mode;
  r.samples = samples;
  r.ci_low = ci_low;
  r.ci_high = ci_high;
  return r;
}

template <class S>
CorrelationReport<S> correlate(const Measure<S>& mu, const PermSet& a, const PermSet& b) {
  if (mu.n() != a.n() || a.n() != b.n()) throw std::invalid_argument("correlate: mismatched n");
  S p_a = mu.measure_of_set(a);
  S p_b = mu.measure_of_set(b);
  S p_ab = mu.measure_of_set(a & b);
  return make_correlation_report<S>(mu.n(), p_ab, p_a, p_b, ReportMode::exact);
}

/// Empirical correlation of two membership predicates under mu's sampler,
/// with Wilson 95% intervals.
CorrelationReport<double> monte_carlo_correlate(const MeasureQ& mu, const PermPredicate& pred_a,
                                                const PermPredicate& pred_b, std::uint64_t samples, Rng& rng);
CorrelationReport<double> monte_carlo_correlate(const MeasureD& mu, const PermPredicate& pred_a,
                                                const PermPredicate& pred_b, std::uint64_t samples, Rng& rng);

struct ScanOptions {
  // exhaustive mode enumerates every up-set (bounded by limit) and scans all
  // unordered pairs; random mode draws pair_count closure-of-Bernoulli pairs.
  bool exhaustive = true;
  std::uint64_t limit = 1'000'000;   // exhaustive: max up-sets enumerated
  std::uint64_t pair_count = 1000;   // random mode
  double density = 0.3;              // random mode seed density
  std::uint64_t seed = 0;            // random mode
  unsigned threads = 1;              // 0 = one per hardware thread
};

template <class S>
struct ScanReport {
  int n = 0;
  OrderKind kind;
  std::string measure_desc;
  std::uint64_t pairs_tested = 0;
  S min_slack = S(0);
  std::string argmin_a_hex, argmin_b_hex;  // re-checkable witness pair
  bool truncated = false;
  bool randomized = false;
  std::uint64_t seed = 0;
};

// Scans are partitioned over pair indices and merged by a min-slack
// reduction (ties broken by pair index), and random pairs draw from
// per-index streams, so the report is identical for every thread count.
template <class S>
ScanReport<S> scan_up_set_pairs(const Order& order, const Measure<S>& mu, const ScanOptions& opts,
                                std::string measure_desc = {}) {
  if (order.n() != mu.n()) throw std::invalid_argument("scan: order and measure disagree on n");
  ScanReport<S> report;
  report.n = order.n();
  report.kind = order.kind();
  report.measure_desc = std::move(measure_desc);
  report.randomized = !opts.exhaustive;
  report.seed = opts.exhaustive ? 0 : opts.seed;

  std::vector<PermSet> ups;
  std::uint64_t total = 0;
  if (opts.exhaustive) {
    bool truncated = false;
    ups = order.all_up_sets(opts.limit, &truncated);
    report.truncated = truncated;
    total = ups.size() * (ups.size() + 1) / 2;
  } else {
    total = opts.pair_count;
  }
  report.pairs_tested = total;

  unsigned threads = opts.threads;
  if (threads == 0) threads = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  if (total > 0 && static_cast<std::uint64_t>(threads) > total) threads = static_cast<unsigned>(total);
  if (threads == 0) threads = 1;

  struct Best {
    bool any = false;
    S slack = S(0);
    std::uint64_t index = 0;
    std::string a_hex, b_hex;
  };

  auto run_worker = [&](unsigned w, Best& best, std::exception_ptr& err) {
    try {
      auto consider = [&](std::uint64_t index, const PermSet& a, const PermSet& b) {
        CorrelationReport<S> c = correlate(mu, a, b);
        if (!best.any || c.slack < best.slack || (c.slack == best.slack && index < best.index)) {
          best.any = true;
          best.slack = c.slack;
          best.index = index;
          best.a_hex = a.to_hex();
          best.b_hex = b.to_hex();
        }
      };
      if (opts.exhaustive) {
        std::uint64_t f = 0;
        for (std::size_t i = 0; i < ups.size(); ++i)
          for (std::size_t j = i; j < ups.size(); ++j, ++f)
            if (f % threads == w) consider(f, ups[i], ups[j]);
      } else {
        for (std::uint64_t p = w; p < total; p += threads) {
          Rng rng(mix_seed(opts.seed, p));
          PermSet a = order.random_up_set(opts.density, rng);
          PermSet b = order.random_up_set(opts.density, rng);
          consider(p, a, b);
        }
      }
    } catch (...) {
      err = std::current_exception();
    }
  };

  std::vector<Best> bests(threads);
  std::vector<std::exception_ptr> errors(threads);
  if (threads == 1) {
    run_worker(0, bests[0], errors[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] { run_worker(w, bests[w], errors[w]); });
    for (std::thread& t : pool) t.join();
  }
  for (std::exception_ptr& err : errors)
    if (err) std::rethrow_exception(err);

  bool any = false;
  Best merged;
  for (Best& b : bests) {
    if (!b.any) continue;
    if (!any || b.slack < merged.slack || (b.slack == merged.slack && b.index < merged.index)) {
      merged = std::move(b);
      any = true;
    }
  }
  if (any) {
    report.min_slack = merged.slack;
    report.argmin_a_hex = merged.a_hex;
    report.argmin_b_hex = merged.b_hex;
  }
  return report;
}

// One row of the anti-correlated-pair sweep; densities are exact for n
// within the exhaustive cap, estimates beyond it.
struct AntiPairSweepRow {
  int n = 0;
  int m = 0;
  Rational density_a, density_b, density_ab, lower_bound;
  bool exact = true;
  std::uint64_t samples = 0;
};

/// Exhaustive up to n = 10; larger n use Monte Carlo with mc_samples draws.
std::vector<AntiPairSweepRow> anti_pair_sweep(const Rational& alpha, const Rational& beta,
                                              const std::vector<int>& n_list, std::uint64_t mc_samples = 200000,
                                              std::uint64_t seed = 1);

struct SequenceInequalitySides {
  Rational lhs, rhs;
  bool holds = false;
};

/// Raw evaluation of sum t_k u_k v_k vs (sum t_k u_k)(sum t_k v_k);
/// no hypothesis checking.
SequenceInequalitySides sequence_inequality_sides(const std::vector<Rational>& t, const std::vector<Rational>& u,
                                                  const std::vector<Rational>& v);

/// Enforces the hypotheses (u, v nondecreasing; t >= 0; sum t <= 1) and
/// evaluates; under them holds is always true.
SequenceInequalitySides check_sequence_inequality(const std::vector<Rational>& t, const std::vector<Rational>& u,
                                                  const std::vector<Rational>& v);

/// Named catalog of structured strong up-sets (bands, cumulative layers,
/// prefix-count families), deduplicated; the pair source for experiments.
std::vector<std::pair<std::string, PermSet>> structured_strong_up_sets(int n);

enum class OpenQuestion { spaced = 1, middle_gap = 2, fixed_points = 3 };

/// The three spatial measures under investigation: equally spaced points
/// with V = abs, the two-cluster middle gap (even n only), and the
/// fixed-point count. q_param = 1 gives the uniform measure in each case.
template <class S>
Measure<S> open_question_measure(OpenQuestion q, int n, const S& q_param);

/// Builds the requested spatial measure and scans the structured strong
/// up-set pairs; reports min slack without asserting its sign.
template <class S>
ScanReport<S> open_question_experiment(OpenQuestion q, int n, const S& q_param);

struct TBandScanRow {
  int t = 0;
  std::uint64_t trials = 0;
  Rational min_slack;
  Rational mean_slack;
};

/// Uniform-measure correlation statistics over random t-up-set pairs, one
/// row per t. t = n reproduces the strong order (slack stays >= 0 there).
std::vector<TBandScanRow> t_up_set_experiment(int n, const std::vector<int>& t_list, double density,
                                              std::uint64_t trials, std::uint64_t seed);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfCheckReport {
  std::vector<CheckResult> checks;
  bool all_passed = true;
};

/// The invariant suite behind the `selfcheck` CLI verb: encode/decode and
/// rank round-trips, lattice laws, closure-operator properties, sampler
/// frequencies at 3 sigma, and the sequence inequality on random instances.
SelfCheckReport selfcheck(std::uint64_t seed);

}  // namespace permcorr
