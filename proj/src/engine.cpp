#include "permcorr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace permcorr {

namespace {

std::pair<double, double> wilson95(std::uint64_t hits, std::uint64_t total) {
  const double z = 1.959963984540054;
  double phat = static_cast<double>(hits) / static_cast<double>(total);
  double nt = static_cast<double>(total);
  double z2 = z * z;
  double denom = 1.0 + z2 / nt;
  double center = (phat + z2 / (2.0 * nt)) / denom;
  double half = z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

template <class S>
CorrelationReport<double> monte_carlo_impl(const Measure<S>& mu, const PermPredicate& pred_a,
                                           const PermPredicate& pred_b, std::uint64_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("monte_carlo_correlate: samples must be positive");
  std::uint64_t hits_a = 0, hits_b = 0, hits_ab = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    Permutation a = mu.sample(rng);
    bool in_a = pred_a(a), in_b = pred_b(a);
    if (in_a) ++hits_a;
    if (in_b) ++hits_b;
    if (in_a && in_b) ++hits_ab;
  }
  auto [lo, hi] = wilson95(hits_ab, samples);
  double inv = 1.0 / static_cast<double>(samples);
  return make_correlation_report<double>(mu.n(), static_cast<double>(hits_ab) * inv,
                                         static_cast<double>(hits_a) * inv, static_cast<double>(hits_b) * inv,
                                         ReportMode::monte_carlo, samples, lo, hi);
}

Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(v[static_cast<std::size_t>(i)], v[j]);
  }
  return Permutation::unchecked(std::move(v));
}

}  // namespace

CorrelationReport<double> monte_carlo_correlate(const MeasureQ& mu, const PermPredicate& pred_a,
                                                const PermPredicate& pred_b, std::uint64_t samples, Rng& rng) {
  return monte_carlo_impl(mu, pred_a, pred_b, samples, rng);
}

CorrelationReport<double> monte_carlo_correlate(const MeasureD& mu, const PermPredicate& pred_a,
                                                const PermPredicate& pred_b, std::uint64_t samples, Rng& rng) {
  return monte_carlo_impl(mu, pred_a, pred_b, samples, rng);
}

std::vector<AntiPairSweepRow> anti_pair_sweep(const Rational& alpha, const Rational& beta,
                                              const std::vector<int>& n_list, std::uint64_t mc_samples,
                                              std::uint64_t seed) {
  std::vector<AntiPairSweepRow> rows;
  Rng master(seed);
  for (int n : n_list) {
    AntiPairSweepRow row;
    row.n = n;
    row.m = anti_pair_split(n, alpha, beta);
    if (n <= kMaxDenseMeasureN) {
      AntiPair pair = anti_correlated_pair(n, alpha, beta);
      std::uint64_t nf = factorial(n);
      std::uint64_t ca = pair.a.size(), cb = pair.b.size(), cab = pair.a.intersection_size(pair.b);
      row.density_a = Rational(ca, nf);
      row.density_b = Rational(cb, nf);
      row.density_ab = Rational(cab, nf);
      std::uint64_t excess = ca + cb > nf ? ca + cb - nf : 0;
      row.lower_bound = Rational(excess, nf);
      row.exact = true;
    } else {
      Rng rng = master.split();
      Rational bound_a = (1 - alpha) * row.m;
      Rational bound_b = (1 - beta) * (n - row.m + 1);
      std::uint64_t ca = 0, cb = 0, cab = 0;
      for (std::uint64_t s = 0; s < mc_samples; ++s) {
        Permutation p = random_permutation(n, rng);
        bool in_a = Rational(g_stat(p, row.m)) >= bound_a;
        bool in_b = Rational(h_stat(p, row.m)) >= bound_b;
        if (in_a) ++ca;
        if (in_b) ++cb;
        if (in_a && in_b) ++cab;
      }
      row.density_a = Rational(ca, mc_samples);
      row.density_b = Rational(cb, mc_samples);
      row.density_ab = Rational(cab, mc_samples);
      Rational excess = row.density_a + row.density_b - 1;
      row.lower_bound = excess > 0 ? excess : Rational(0);
      row.exact = false;
      row.samples = mc_samples;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

SequenceInequalitySides sequence_inequality_sides(const std::vector<Rational>& t, const std::vector<Rational>& u,
                                                  const std::vector<Rational>& v) {
  if (t.size() != u.size() || t.size() != v.size())
    throw std::invalid_argument("sequence inequality: length mismatch");
  Rational lhs = 0, sum_tu = 0, sum_tv = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    lhs += t[k] * u[k] * v[k];
    sum_tu += t[k] * u[k];
    sum_tv += t[k] * v[k];
  }
  SequenceInequalitySides out;
  out.lhs = lhs;
  out.rhs = sum_tu * sum_tv;
  out.holds = out.lhs >= out.rhs;
  return out;
}

SequenceInequalitySides check_sequence_inequality(const std::vector<Rational>& t, const std::vector<Rational>& u,
                                                  const std::vector<Rational>& v) {
  if (t.empty()) throw std::invalid_argument("sequence inequality: empty input");
  if (t.size() != u.size() || t.size() != v.size())
    throw std::invalid_argument("sequence inequality: length mismatch");
  Rational sum_t = 0;
  for (const Rational& x : t) {
    if (x < 0) throw std::invalid_argument("sequence inequality: t must be nonnegative");
    sum_t += x;
  }
  if (sum_t > 1) throw std::invalid_argument("sequence inequality: sum of t exceeds 1");
  for (std::size_t k = 1; k < u.size(); ++k) {
    if (u[k] < u[k - 1]) throw std::invalid_argument("sequence inequality: u must be nondecreasing");
    if (v[k] < v[k - 1]) throw std::invalid_argument("sequence inequality: v must be nondecreasing");
  }
  for (const Rational& x : u)
    if (x < 0) throw std::invalid_argument("sequence inequality: u must be nonnegative");
  for (const Rational& x : v)
    if (x < 0) throw std::invalid_argument("sequence inequality: v must be nonnegative");
  return sequence_inequality_sides(t, u, v);
}

std::vector<std::pair<std::string, PermSet>> structured_strong_up_sets(int n) {
  std::vector<std::pair<std::string, PermSet>> catalog;
  std::map<std::string, bool> seen;
  auto add = [&](std::string name, PermSet s) {
    std::string key = s.to_hex();
    if (seen.count(key)) return;
    seen[key] = true;
    catalog.emplace_back(std::move(name), std::move(s));
  };
  for (int t = 0; t <= n - 1; ++t) add("t_band(t=" + std::to_string(t) + ")", t_band(n, t));
  int max_inv = n * (n - 1) / 2;
  for (int k = 0; k <= max_inv; ++k) add("layers_le(k=" + std::to_string(k) + ")", layers_le(n, k));
  for (int t = 0; t <= 2 * n; t += 2)
    add("disp_sum_le(t=" + std::to_string(t) + ")", band_like_preset(n, BandPreset::sum_le, t));
  for (int b = 1; b < n; ++b)
    for (int c = 1; c < n; ++c)
      for (int a = 1; a <= std::min(b, c); ++a) {
        std::vector<Rational> w(static_cast<std::size_t>(n), 0), thresholds(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < b; ++i) w[static_cast<std::size_t>(i)] = 1;
        thresholds[static_cast<std::size_t>(c - 1)] = a;
        add("prefix_count(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ",c=" + std::to_string(c) + ")",
            seq_dominating(n, w, thresholds));
      }
  return catalog;
}

template <class S>
Measure<S> open_question_measure(OpenQuestion q, int n, const S& q_param) {
  switch (q) {
    case OpenQuestion::spaced: {
      std::vector<S> x;
      for (int i = 1; i <= n; ++i) x.push_back(S(i));
      return boltzmann_measure<S>(x, Potential<S>::named("abs"), q_param);
    }
    case OpenQuestion::middle_gap: {
      if (n % 2 != 0) throw std::invalid_argument("middle_gap measure needs even n");
      std::vector<S> x(static_cast<std::size_t>(n), S(0));
      for (int i = n / 2; i < n; ++i) x[static_cast<std::size_t>(i)] = S(1);
      return boltzmann_measure<S>(x, Potential<S>::named("left_indicator"), q_param);
    }
    case OpenQuestion::fixed_points:
      return fixed_point_measure<S>(n, q_param);
  }
  throw std::invalid_argument("unknown open question");
}

template Measure<Rational> open_question_measure<Rational>(OpenQuestion, int, const Rational&);
template Measure<double> open_question_measure<double>(OpenQuestion, int, const double&);

template <class S>
ScanReport<S> open_question_experiment(OpenQuestion q, int n, const S& q_param) {
  if (n > 7) throw std::invalid_argument("open question experiment capped at n = 7 (dense measures)");
  Measure<S> mu = open_question_measure<S>(q, n, q_param);
  std::vector<std::pair<std::string, PermSet>> catalog = structured_strong_up_sets(n);
  ScanReport<S> report;
  report.n = n;
  report.kind = OrderKind::strong();
  report.measure_desc = "open_question_" + std::to_string(static_cast<int>(q));
  bool first = true;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    for (std::size_t j = i; j < catalog.size(); ++j) {
      CorrelationReport<S> c = correlate(mu, catalog[i].second, catalog[j].second);
      ++report.pairs_tested;
      if (first || c.slack < report.min_slack) {
        first = false;
        report.min_slack = c.slack;
        report.argmin_a_hex = catalog[i].second.to_hex();
        report.argmin_b_hex = catalog[j].second.to_hex();
      }
    }
  }
  if (first) report.min_slack = S(0);
  return report;
}

template ScanReport<Rational> open_question_experiment<Rational>(OpenQuestion, int, const Rational&);
template ScanReport<double> open_question_experiment<double>(OpenQuestion, int, const double&);

std::vector<TBandScanRow> t_up_set_experiment(int n, const std::vector<int>& t_list, double density,
                                              std::uint64_t trials, std::uint64_t seed) {
  if (n > 8) throw std::invalid_argument("t_up_set_experiment capped at n = 8");
  MeasureQ uniform = uniform_measure<Rational>(n);
  Rng master(seed);
  std::vector<TBandScanRow> rows;
  for (int t : t_list) {
    Order order(n, OrderKind::t_limited(t));
    Rng rng = master.split();
    TBandScanRow row;
    row.t = t;
    row.trials = trials;
    Rational sum = 0;
    bool first = true;
    for (std::uint64_t s = 0; s < trials; ++s) {
      PermSet a = order.random_up_set(density, rng);
      PermSet b = order.random_up_set(density, rng);
      CorrelationReport<Rational> c = correlate(uniform, a, b);
      sum += c.slack;
      if (first || c.slack < row.min_slack) {
        first = false;
        row.min_slack = c.slack;
      }
    }
    if (trials > 0) row.mean_slack = sum / Rational(trials);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

// selfcheck pieces

bool check_lehmer_round_trip_exhaustive(std::string& detail) {
  for (int n = 1; n <= 6; ++n) {
    bool ok = true;
    for_each_permutation(n, [&](const std::vector<int>& values) {
      Permutation a(values);
      if (decode_lehmer(encode_lehmer(a)) != a) ok = false;
    });
    if (!ok) {
      detail = "decode(encode) failed at n=" + std::to_string(n);
      return false;
    }
    // all Lehmer codes via mixed-radix counter
    std::vector<int> f(static_cast<std::size_t>(n), 1);
    for (;;) {
      LehmerCode code(f);
      if (encode_lehmer(decode_lehmer(code)) != code) {
        detail = "encode(decode) failed at code " + code.to_string();
        return false;
      }
      int k = 0;
      while (k < n && f[static_cast<std::size_t>(k)] == k + 1) {
        f[static_cast<std::size_t>(k)] = 1;
        ++k;
      }
      if (k == n) break;
      ++f[static_cast<std::size_t>(k)];
    }
  }
  return true;
}

bool check_lehmer_round_trip_random(Rng& rng, std::string& detail) {
  for (int n = 7; n <= 12; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      Permutation a = random_permutation(n, rng);
      if (decode_lehmer(encode_lehmer(a)) != a) {
        detail = "failed at n=" + std::to_string(n) + " perm " + a.to_string();
        return false;
      }
    }
  }
  return true;
}

bool check_rank_bijection(std::string& detail) {
  for (int n = 1; n <= 7; ++n) {
    std::uint64_t nf = factorial(n);
    for (Rank r = 0; r < nf; ++r) {
      if (rank_of(unrank(r, n)) != r) {
        detail = "rank(unrank) failed at n=" + std::to_string(n) + " r=" + std::to_string(r);
        return false;
      }
    }
  }
  for (int n = 1; n <= 6; ++n) {
    bool ok = true;
    for_each_permutation(n, [&](const std::vector<int>& values) {
      Permutation a(values);
      if (unrank(rank_of(a), n) != a) ok = false;
    });
    if (!ok) {
      detail = "unrank(rank) failed at n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool check_inversion_identity(std::string& detail) {
  for (int n = 1; n <= 6; ++n) {
    bool ok = true;
    for_each_permutation(n, [&](const std::vector<int>& values) {
      Permutation a(values);
      if (static_cast<int>(inversions(a).size()) != inversion_count(a)) ok = false;
    });
    if (!ok) {
      detail = "identity failed at n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool check_lattice_laws(Rng& rng, std::string& detail) {
  for (int n = 2; n <= 4; ++n) {
    std::uint64_t nf = factorial(n);
    for (Rank ra = 0; ra < nf; ++ra) {
      Permutation a = unrank(ra, n);
      if (grid_join(a, a) != a || grid_meet(a, a) != a) {
        detail = "idempotence failed";
        return false;
      }
      for (Rank rb = 0; rb < nf; ++rb) {
        Permutation b = unrank(rb, n);
        if (grid_join(a, b) != grid_join(b, a) || grid_meet(a, b) != grid_meet(b, a)) {
          detail = "commutativity failed";
          return false;
        }
        if (grid_join(a, grid_meet(a, b)) != a || grid_meet(a, grid_join(a, b)) != a) {
          detail = "absorption failed";
          return false;
        }
      }
    }
  }
  for (int trial = 0; trial < 500; ++trial) {
    int n = 2 + static_cast<int>(rng.below(7));  // up to 8
    Permutation a = random_permutation(n, rng);
    Permutation b = random_permutation(n, rng);
    Permutation c = random_permutation(n, rng);
    if (grid_join(grid_join(a, b), c) != grid_join(a, grid_join(b, c)) ||
        grid_meet(grid_meet(a, b), c) != grid_meet(a, grid_meet(b, c))) {
      detail = "associativity failed at n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool check_closure_operator(Rng& rng, std::string& detail) {
  std::vector<OrderKind> kinds = {OrderKind::strong(), OrderKind::weak(), OrderKind::grid(),
                                  OrderKind::t_limited(2)};
  for (const OrderKind& kind : kinds) {
    for (int n = 3; n <= 5; ++n) {
      Order order(n, kind);
      std::uint64_t nf = factorial(n);
      for (int trial = 0; trial < 20; ++trial) {
        PermSet s(n), t(n);
        for (Rank r = 0; r < nf; ++r) {
          if (rng.bernoulli(0.2)) s.insert(r);
          if (rng.bernoulli(0.35)) t.insert(r);
        }
        t |= s;  // force s subset t for monotonicity
        PermSet cs = order.up_closure(s);
        PermSet ct = order.up_closure(t);
        if (!s.is_subset_of(cs)) { detail = "not extensive (" + kind.name() + ")"; return false; }
        if (!cs.is_subset_of(ct)) { detail = "not monotone (" + kind.name() + ")"; return false; }
        if (order.up_closure(cs) != cs) { detail = "not idempotent (" + kind.name() + ")"; return false; }
        if (!order.is_up_set(cs)) { detail = "closure not an up-set (" + kind.name() + ")"; return false; }
      }
    }
  }
  return true;
}

bool check_sampler_uniform(Rng& rng, std::string& detail) {
  const int n = 4;
  const std::uint64_t draws = 100000;
  MeasureQ mu = uniform_measure<Rational>(n);
  std::vector<std::uint64_t> counts(factorial(n), 0);
  for (std::uint64_t s = 0; s < draws; ++s) ++counts[rank_of(mu.sample(rng))];
  double p = 1.0 / static_cast<double>(factorial(n));
  double sigma = std::sqrt(static_cast<double>(draws) * p * (1.0 - p));
  double expected = static_cast<double>(draws) * p;
  for (Rank r = 0; r < factorial(n); ++r) {
    if (std::abs(static_cast<double>(counts[r]) - expected) > 3.0 * sigma) {
      detail = "rank " + std::to_string(r) + " off by more than 3 sigma";
      return false;
    }
  }
  return true;
}

bool check_sampler_mallows(Rng& rng, std::string& detail) {
  const int n = 4;
  const std::uint64_t draws = 100000;
  MeasureQ mu = mallows_measure<Rational>(n, Rational(1, 2));
  // exact inversion histogram by enumeration
  int max_inv = n * (n - 1) / 2;
  std::vector<Rational> bin_mass(static_cast<std::size_t>(max_inv) + 1, Rational(0));
  for (Rank r = 0; r < factorial(n); ++r) {
    Permutation a = unrank(r, n);
    bin_mass[static_cast<std::size_t>(inversion_count(a))] += mu.density_by_rank(r);
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_inv) + 1, 0);
  for (std::uint64_t s = 0; s < draws; ++s) ++counts[static_cast<std::size_t>(inversion_count(mu.sample(rng)))];
  for (int k = 0; k <= max_inv; ++k) {
    double p = to_double(bin_mass[static_cast<std::size_t>(k)]);
    double sigma = std::sqrt(static_cast<double>(draws) * p * (1.0 - p));
    double expected = static_cast<double>(draws) * p;
    if (std::abs(static_cast<double>(counts[static_cast<std::size_t>(k)]) - expected) > 3.0 * sigma) {
      detail = "inversion bin " + std::to_string(k) + " off by more than 3 sigma";
      return false;
    }
  }
  return true;
}

bool check_sequence_inequality_random(Rng& rng, std::string& detail) {
  for (int trial = 0; trial < 10000; ++trial) {
    std::size_t len = 1 + rng.below(8);
    std::vector<Rational> t(len), u(len), v(len);
    Rational raw_sum = 0;
    for (std::size_t k = 0; k < len; ++k) {
      t[k] = Rational(rng.below(11), 10);
      raw_sum += t[k];
      u[k] = Rational(rng.below(11), 1 + rng.below(4));
      v[k] = Rational(rng.below(11), 1 + rng.below(4));
    }
    if (raw_sum > 0) {
      Rational scale = Rational(rng.below(17), 16) / raw_sum;
      for (auto& x : t) x *= scale;
    }
    std::sort(u.begin(), u.end());
    std::sort(v.begin(), v.end());
    SequenceInequalitySides sides = check_sequence_inequality(t, u, v);
    if (!sides.holds) {
      detail = "violated at trial " + std::to_string(trial);
      return false;
    }
  }
  return true;
}

bool check_frechet_on_reports(Rng& rng, std::string& detail) {
  const int n = 4;
  MeasureQ mu = uniform_measure<Rational>(n);
  Order order(n, OrderKind::strong());
  try {
    for (int trial = 0; trial < 50; ++trial) {
      PermSet a = order.random_up_set(0.3, rng);
      PermSet b = order.random_up_set(0.3, rng);
      correlate(mu, a, b);
    }
  } catch (const std::logic_error& e) {
    detail = e.what();
    return false;
  }
  return true;
}

}  // namespace

SelfCheckReport selfcheck(std::uint64_t seed) {
  Rng master(seed);
  SelfCheckReport report;
  auto run = [&](const std::string& name, auto&& fn) {
    CheckResult result;
    result.name = name;
    try {
      result.passed = fn(result.detail);
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = e.what();
    }
    report.all_passed = report.all_passed && result.passed;
    report.checks.push_back(std::move(result));
  };

  run("lehmer_round_trip_exhaustive", [&](std::string& d) { return check_lehmer_round_trip_exhaustive(d); });
  run("lehmer_round_trip_random", [&](std::string& d) { return check_lehmer_round_trip_random(master, d); });
  run("rank_bijection", [&](std::string& d) { return check_rank_bijection(d); });
  run("inversion_count_identity", [&](std::string& d) { return check_inversion_identity(d); });
  run("grid_lattice_laws", [&](std::string& d) { return check_lattice_laws(master, d); });
  run("closure_operator", [&](std::string& d) { return check_closure_operator(master, d); });
  run("sampler_uniform_3sigma", [&](std::string& d) { return check_sampler_uniform(master, d); });
  run("sampler_mallows_3sigma", [&](std::string& d) { return check_sampler_mallows(master, d); });
  run("sequence_inequality_random", [&](std::string& d) { return check_sequence_inequality_random(master, d); });
  run("frechet_invariants", [&](std::string& d) { return check_frechet_on_reports(master, d); });
  return report;
}

}  // namespace permcorr
