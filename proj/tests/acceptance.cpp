// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Everything theorem-level runs in exact rational arithmetic with zero
// tolerance.
//
// Criterion 6 carries one assertion that is provably unattainable for these
// families at desk scale (see the comment there); it is asserted as required
// and reported honestly when it fails.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <fstream>
#include <iostream>

#include "permcorr/engine.hpp"
#include "permcorr/json_io.hpp"

using namespace permcorr;

namespace {

class CriterionLog {
 public:
  CriterionLog(int id, std::string title) : id_(id), title_(std::move(title)) {
    start_ = std::chrono::steady_clock::now();
  }

  void fail(const std::string& why) {
    if (failures_.size() < 20) failures_.push_back(why);
  }

  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }

  bool finish() {
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::cout << "[criterion " << id_ << "] " << (failures_.empty() ? "PASS" : "FAIL") << "  " << title_
              << "  (" << elapsed << " s)\n";
    for (const std::string& f : failures_) std::cout << "    - " << f << "\n";
    std::cout.flush();
    return failures_.empty();
  }

 private:
  int id_;
  std::string title_;
  std::vector<std::string> failures_;
  std::chrono::steady_clock::time_point start_;
};

MeasureQ random_rational_ig(int n, Rng& rng) {
  std::vector<CoordinateDistribution<Rational>> dists;
  for (int k = 1; k <= n; ++k) {
    CoordinateDistribution<Rational> d;
    d.k = k;
    std::vector<std::uint64_t> w(static_cast<std::size_t>(k));
    std::uint64_t total = 0;
    for (int v = 0; v < k; ++v) {
      w[static_cast<std::size_t>(v)] = 1 + rng.below(11);
      total += w[static_cast<std::size_t>(v)];
    }
    for (int v = 0; v < k; ++v) d.probs.push_back(Rational(w[static_cast<std::size_t>(v)], total));
    dists.push_back(std::move(d));
  }
  return ig_measure<Rational>(std::move(dists));
}

}  // namespace

TEST_CASE("criterion 1: uniform positive association on the strong order") {
  CriterionLog log(1, "uniform strong-order slack >= 0: exhaustive n=3, 1e5 random pairs at n=5 and n=6");

  Order strong3(3, OrderKind::strong());
  MeasureQ unif3 = uniform_measure<Rational>(3);
  ScanOptions opts;
  opts.exhaustive = true;
  ScanReport<Rational> all3 = scan_up_set_pairs(strong3, unif3, opts);
  log.require(all3.pairs_tested == 45, "expected 45 unordered pairs from the 9 strong up-sets of S_3");
  log.require(!all3.truncated, "n=3 enumeration should complete");
  log.require(all3.min_slack >= 0, "negative slack among exhaustive n=3 pairs");

  for (int n : {5, 6}) {
    Order strong(n, OrderKind::strong());
    MeasureQ unif = uniform_measure<Rational>(n);
    Rng rng(0x5eed0000 + static_cast<std::uint64_t>(n));
    Rational min_slack = 1;
    for (int pair = 0; pair < 100000; ++pair) {
      PermSet a = strong.random_up_set(0.3, rng);
      PermSet b = strong.random_up_set(0.3, rng);
      CorrelationReport<Rational> r = correlate(unif, a, b);
      if (r.slack < min_slack) min_slack = r.slack;
    }
    log.require(min_slack >= 0, "negative slack at n=" + std::to_string(n));
  }
  CHECK(log.finish());
}

TEST_CASE("criterion 2: the weak-order counterexample is reproduced exactly") {
  CriterionLog log(2, "uniform n=3: P(U12 and U23) = 1/6 against product 1/4");
  MeasureQ unif = uniform_measure<Rational>(3);
  CorrelationReport<Rational> r = correlate(unif, u_ij(3, 1, 2), u_ij(3, 2, 3));
  log.require(r.p_ab == Rational(1, 6), "p_ab != 1/6");
  log.require(r.p_a * r.p_b == Rational(1, 4), "product != 1/4");
  log.require(r.slack == Rational(-1, 12), "slack != -1/12");
  CHECK(log.finish());
}

TEST_CASE("criterion 3: product measures are positively associated on strong up-sets") {
  CriterionLog log(3, "20 random rational product measures x 1000 strong up-set pairs at n=4,5, exact");
  for (int n : {4, 5}) {
    Order strong(n, OrderKind::strong());
    Rng measure_rng(0xc3 + static_cast<std::uint64_t>(n));
    for (int mi = 0; mi < 20; ++mi) {
      MeasureQ mu = random_rational_ig(n, measure_rng);
      std::vector<Rational> dens = mu.density_table();
      Rng pair_rng(0x9a1125 + static_cast<std::uint64_t>(1000 * n + mi));
      for (int pair = 0; pair < 1000; ++pair) {
        PermSet a = strong.random_up_set(0.3, pair_rng);
        PermSet b = strong.random_up_set(0.3, pair_rng);
        Rational pa = 0, pb = 0, pab = 0;
        a.for_each([&](Rank r) { pa += dens[r]; });
        b.for_each([&](Rank r) { pb += dens[r]; });
        (a & b).for_each([&](Rank r) { pab += dens[r]; });
        if (pab < pa * pb)
          log.fail("negative slack at n=" + std::to_string(n) + ", measure " + std::to_string(mi));
        if (pair % 250 == 0) {
          // tie the density-table route to the measure_of_set route
          CorrelationReport<Rational> r = correlate(mu, a, b);
          if (r.p_ab != pab || r.p_a != pa || r.p_b != pb)
            log.fail("density-table route disagrees with measure_of_set");
        }
      }
    }
  }
  CHECK(log.finish());
}

TEST_CASE("criterion 4: product measures satisfy the lattice condition with equality") {
  CriterionLog log(4, "all-pairs join/meet condition, exact zero slack, same 20 measures at n=4");
  Rng measure_rng(0xc3 + 4);  // same stream as criterion 3 at n=4
  for (int mi = 0; mi < 20; ++mi) {
    MeasureQ mu = random_rational_ig(4, measure_rng);
    LatticeConditionReport<Rational> r = check_lattice_condition(mu);
    log.require(r.holds, "condition failed for measure " + std::to_string(mi));
    log.require(r.worst_slack == 0, "nonzero slack for measure " + std::to_string(mi));
    log.require(!r.symbolic, "expected a real scan at n=4");
    log.require(r.pairs_checked == 24 * 23 / 2, "wrong pair count");
  }
  CHECK(log.finish());
}

TEST_CASE("criterion 5: mallows density equals normalized q^inversions") {
  CriterionLog log(5, "product-form mallows vs q^inv / Z, exact, n <= 5, q in {1/3, 1/2, 7/10, 1}");
  for (int n = 1; n <= 5; ++n) {
    for (Rational q : {Rational(1, 3), Rational(1, 2), Rational(7, 10), Rational(1)}) {
      MeasureQ mu = mallows_measure<Rational>(n, q);
      std::uint64_t nf = factorial(n);
      Rational z = 0;
      std::vector<Rational> powers(nf);
      for (Rank r = 0; r < nf; ++r) {
        powers[r] = pow_rational(q, static_cast<std::uint64_t>(inversion_count(unrank(r, n))));
        z += powers[r];
      }
      for (Rank r = 0; r < nf; ++r) {
        if (mu.density_by_rank(r) != powers[r] / z)
          log.fail("mismatch at n=" + std::to_string(n) + " q=" + format_rational(q) + " rank=" +
                   std::to_string(r));
      }
    }
  }
  CHECK(log.finish());
}

namespace {

struct SweepOracleRow {
  int n = 0, m = 0;
  std::uint64_t count_a = 0, count_b = 0, count_ab = 0;
};

// Independent route for criterion 6: lexicographic enumeration with the
// statistics computed straight from their definitions; no ranks, codes or
// bitsets involved.
SweepOracleRow sweep_oracle(int n) {
  SweepOracleRow row;
  row.n = n;
  row.m = (n + 1) / 2;  // ceil(n/2) at alpha = beta
  int m = row.m;
  int need_g = (m + 1) / 2;      // ceil(m/2)
  int need_h = (n - m + 2) / 2;  // ceil((n-m+1)/2)
  std::vector<int> pos(static_cast<std::size_t>(n) + 1);
  auto& counts = row;
  for_each_permutation(n, [&](const std::vector<int>& values) {
    for (int p = 1; p <= n; ++p) pos[static_cast<std::size_t>(values[static_cast<std::size_t>(p - 1)])] = p;
    int pm = pos[static_cast<std::size_t>(m)];
    int g = 0, h = 0;
    for (int i = 1; i <= m; ++i)
      if (pos[static_cast<std::size_t>(i)] <= pm) ++g;
    for (int i = m; i <= n; ++i)
      if (pos[static_cast<std::size_t>(i)] >= pm) ++h;
    bool in_a = g >= need_g, in_b = h >= need_h;
    if (in_a) ++counts.count_a;
    if (in_b) ++counts.count_b;
    if (in_a && in_b) ++counts.count_ab;
  });
  return row;
}

}  // namespace

TEST_CASE("criterion 6: anti-correlated pair sweep with golden densities") {
  CriterionLog log(6, "alpha = beta = 1/2 sweep at n = 6, 8, 10: oracle cross-check, golden match, bounds");
  Rational alpha(1, 2), beta(1, 2);
  std::vector<int> n_list = {6, 8, 10};
  std::vector<AntiPairSweepRow> rows = anti_pair_sweep(alpha, beta, n_list);

  Json golden_rows = Json::array();
  Rational prev_density(1);
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    int n = n_list[i];
    const AntiPairSweepRow& row = rows[i];
    log.require(row.exact, "sweep row not exact at n=" + std::to_string(n));

    SweepOracleRow oracle = sweep_oracle(n);
    std::uint64_t nf = factorial(n);
    log.require(oracle.m == row.m, "split point disagrees at n=" + std::to_string(n));
    log.require(Rational(oracle.count_a, nf) == row.density_a &&
                    Rational(oracle.count_b, nf) == row.density_b &&
                    Rational(oracle.count_ab, nf) == row.density_ab,
                "independent enumeration disagrees with the sweep at n=" + std::to_string(n));

    log.require(row.density_a >= Rational(1, 2), "|A|/n! < 1/2 at n=" + std::to_string(n));
    log.require(row.density_b >= Rational(1, 2), "|B|/n! < 1/2 at n=" + std::to_string(n));
    log.require(row.density_ab >= row.lower_bound, "intersection below its counting lower bound");
    log.require(row.density_ab <= prev_density, "intersection density increased at n=" + std::to_string(n));
    prev_density = row.density_ab;

    // Required threshold: intersection density < 1/4. For these families the
    // counting bound |A|+|B|-n! already exceeds n!/4 at every n here (e.g.
    // 480 + 540 - 720 = 300 > 180 at n=6), so no outcome can satisfy the
    // requirement; it is asserted anyway and reported honestly.
    log.require(row.density_ab < Rational(1, 4),
                "intersection density " + format_rational(row.density_ab) + " at n=" + std::to_string(n) +
                    " is not below 1/4 (its counting lower bound " + format_rational(row.lower_bound) +
                    " already exceeds 1/4, so this required threshold is unattainable)");

    golden_rows.push_back(Json{{"n", n},
                               {"m", oracle.m},
                               {"count_a", oracle.count_a},
                               {"count_b", oracle.count_b},
                               {"count_ab", oracle.count_ab},
                               {"density_ab", format_rational(Rational(oracle.count_ab, nf))}});
  }

  // Golden file: written from the oracle on the first run, matched bit-exactly
  // afterwards.
  std::string golden_path = std::string(PERMCORR_GOLDEN_DIR) + "/anti_pair_half.json";
  Json golden_now = Json{{"alpha", "1/2"}, {"beta", "1/2"}, {"rows", golden_rows}};
  std::ifstream in(golden_path);
  if (!in) {
    std::ofstream out(golden_path);
    out << golden_now.dump(2) << "\n";
    std::cout << "    (golden file created: " << golden_path << ")\n";
  } else {
    Json golden_stored;
    in >> golden_stored;
    log.require(golden_stored == golden_now, "golden densities changed");
  }
  CHECK(log.finish());
}

TEST_CASE("criterion 7: order-structure suite") {
  CriterionLog log(7, "weak criterion == search and grid == dominated-swap closure (n<=6); containments and t interpolation (n<=5)");

  for (int n = 2; n <= 6; ++n) {
    Order weak(n, OrderKind::weak());
    Order grid(n, OrderKind::grid());
    std::uint64_t nf = factorial(n);
    std::vector<Permutation> perms;
    perms.reserve(nf);
    for (Rank r = 0; r < nf; ++r) perms.push_back(unrank(r, n));
    bool weak_ok = true, grid_ok = true;
    for (Rank ra = 0; ra < nf; ++ra)
      for (Rank rb = 0; rb < nf; ++rb) {
        if (weak.leq(perms[ra], perms[rb]) != weak.leq_by_search(perms[ra], perms[rb])) weak_ok = false;
        if (grid.leq(perms[ra], perms[rb]) != grid.leq_by_search(perms[ra], perms[rb])) grid_ok = false;
      }
    log.require(weak_ok, "weak inversion-containment criterion != reachability at n=" + std::to_string(n));
    log.require(grid_ok, "grid componentwise criterion != dominated-swap closure at n=" + std::to_string(n));
  }

  for (int n = 2; n <= 5; ++n) {
    Order strong(n, OrderKind::strong());
    Order weak(n, OrderKind::weak());
    Order grid(n, OrderKind::grid());
    Order t1(n, OrderKind::t_limited(1));
    Order tn(n, OrderKind::t_limited(n));
    std::uint64_t nf = factorial(n);
    bool contain_ok = true, edges_ok = true, strong_ok = true;
    for (Rank ra = 0; ra < nf; ++ra) {
      Permutation a = unrank(ra, n);
      for (Rank rb = 0; rb < nf; ++rb) {
        Permutation b = unrank(rb, n);
        bool s = strong.leq(a, b), w = weak.leq(a, b), g = grid.leq(a, b);
        if (s != strong.leq_by_search(a, b)) strong_ok = false;
        if (w && !s) contain_ok = false;
        if (g && !s) contain_ok = false;
        if (t1.leq(a, b) != w) edges_ok = false;
        if (tn.leq(a, b) != s) edges_ok = false;
      }
    }
    log.require(strong_ok, "strong sorted-prefix criterion != reachability at n=" + std::to_string(n));
    log.require(contain_ok, "containment weak/grid within strong failed at n=" + std::to_string(n));
    log.require(edges_ok, "t:1 or t:n does not match weak/strong at n=" + std::to_string(n));
  }
  CHECK(log.finish());
}

TEST_CASE("criterion 8: slice lemma over every strong up-set of S_4") {
  CriterionLog log(8, "all strong up-sets at n=4: slices are strong up-sets over S_3 and nested");
  Order strong4(4, OrderKind::strong());
  Order strong3(3, OrderKind::strong());
  std::uint64_t seen = 0;
  bool slices_ok = true, nesting_ok = true, size_ok = true;
  bool complete = strong4.enumerate_up_sets(5'000'000, [&](const PermSet& a) {
    ++seen;
    std::uint64_t total = 0;
    PermSet prev(3);
    for (int k = 1; k <= 4; ++k) {
      PermSet ak = slice(a, k);
      if (!strong3.is_up_set(ak)) slices_ok = false;
      if (k > 1 && !prev.is_subset_of(ak)) nesting_ok = false;
      total += ak.size();
      prev = ak;
    }
    if (total != a.size()) size_ok = false;
    return true;
  });
  log.require(complete, "up-set enumeration at n=4 hit the cap");
  log.require(slices_ok, "some slice is not a strong up-set");
  log.require(nesting_ok, "slices not nested increasingly");
  log.require(size_ok, "slice sizes do not add up");
  std::cout << "    (strong up-sets of S_4: " << seen << ")\n";
  CHECK(log.finish());
}

TEST_CASE("criterion 9: displacement and domination families") {
  CriterionLog log(9, "bands, cumulative layers, band-like presets, prefix domination: strong up-sets at n<=5; pairwise correlation at n=5 under uniform and mallows");
  Rng rng(0xfab5);
  for (int n = 2; n <= 5; ++n) {
    Order strong(n, OrderKind::strong());
    for (int t = 0; t <= n - 1; ++t)
      log.require(strong.is_up_set(t_band(n, t)), "t_band not a strong up-set");
    for (int k = 0; k <= n * (n - 1) / 2; ++k)
      log.require(strong.is_up_set(layers_le(n, k)), "layers_le not a strong up-set");
    for (long long t = 0; t <= 2 * n; ++t) {
      log.require(strong.is_up_set(band_like_preset(n, BandPreset::sum_le, t)), "sum preset failed");
      log.require(strong.is_up_set(band_like_preset(n, BandPreset::sum_sq_le, t)), "sum_sq preset failed");
    }
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Rational> w, thresholds;
      for (int i = 0; i < n; ++i) {
        w.push_back(Rational(rng.below(8), 1 + rng.below(3)));
        thresholds.push_back(Rational(rng.below(6), 1 + rng.below(3)));
      }
      std::sort(w.rbegin(), w.rend());
      log.require(strong.is_up_set(seq_dominating(n, w, thresholds)), "seq_dominating not strong up-set");
    }
  }

  // pairwise positive correlation of the named event families
  int n = 5;
  std::vector<PermSet> events;
  for (int k : {2, 4, 6}) events.push_back(layers_le(n, k));
  for (int l : {1, 2}) events.push_back(t_band(n, l));
  for (long long m : {2, 4}) events.push_back(band_like_preset(n, BandPreset::sum_le, m));
  for (auto [a, b, c] : {std::tuple{1, 2, 2}, {2, 3, 3}, {2, 2, 4}}) {
    std::vector<Rational> w(static_cast<std::size_t>(n), 0), thresholds(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < b; ++i) w[static_cast<std::size_t>(i)] = 1;
    thresholds[static_cast<std::size_t>(c - 1)] = a;
    events.push_back(seq_dominating(n, w, thresholds));
  }
  MeasureQ unif = uniform_measure<Rational>(n);
  MeasureQ mallows = mallows_measure<Rational>(n, Rational(1, 2));
  for (std::size_t i = 0; i < events.size(); ++i)
    for (std::size_t j = i; j < events.size(); ++j) {
      log.require(correlate(unif, events[i], events[j]).slack >= 0, "negative uniform slack");
      log.require(correlate(mallows, events[i], events[j]).slack >= 0, "negative mallows slack");
    }
  CHECK(log.finish());
}

TEST_CASE("criterion 10: chain correlation for left-compressed families") {
  CriterionLog log(10, "200 compressed pairs at n=4,5,6 exact; joint tails at n=5; chain-count cross-check");
  for (int n : {4, 5, 6}) {
    Rng rng(0xc0a1e5ced + static_cast<std::uint64_t>(n));
    for (int trial = 0; trial < 200; ++trial) {
      SetFamily a = left_compress(random_set_family(n, 0.25, rng));
      SetFamily b = left_compress(random_set_family(n, 0.25, rng));
      std::uint64_t ca = chain_count(a), cb = chain_count(b), cab = chain_count2(a, b);
      Rational nf(factorial(n));
      if (!(Rational(cab) / nf >= (Rational(ca) / nf) * (Rational(cb) / nf)))
        log.fail("chain correlation failed at n=" + std::to_string(n));
      PermSet ua = chain_up_set(a), ub = chain_up_set(b);
      if (ca != ua.size() || cb != ub.size() || cab != ua.intersection_size(ub))
        log.fail("chain counts disagree with chain up-sets at n=" + std::to_string(n));
    }
  }

  Rng rng(0x7a115);
  for (int trial = 0; trial < 50; ++trial) {
    SetFamily a = left_compress(random_set_family(5, 0.25, rng));
    SetFamily b = left_compress(random_set_family(5, 0.3, rng));
    for (int k = 0; k <= 6; ++k)
      for (int l = 0; l <= 6; ++l) {
        JointTailReport r = joint_tail_check(a, b, k, l);
        if (!r.holds) log.fail("joint tail failed at k=" + std::to_string(k) + " l=" + std::to_string(l));
      }
  }
  CHECK(log.finish());
}

TEST_CASE("criterion 11: arithmetic inequality and the selfcheck suite") {
  CriterionLog log(11, "1e4 random hypothesis-satisfying instances hold; full selfcheck passes under a fixed seed");
  Rng rng(0x1e2);
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
    if (!check_sequence_inequality(t, u, v).holds) {
      log.fail("inequality violated under its hypotheses at trial " + std::to_string(trial));
      break;
    }
  }

  SelfCheckReport report = selfcheck(20240601);
  for (const CheckResult& c : report.checks)
    log.require(c.passed, "selfcheck '" + c.name + "' failed: " + c.detail);
  CHECK(log.finish());
}

TEST_CASE("criterion 12: threshold-by-value weights reproduce the anti-correlated pair") {
  CriterionLog log(12, "value-indexed prefix thresholds equal the g/h families as sets, n <= 7");
  for (int n = 2; n <= 7; ++n) {
    for (auto [alpha, beta] : {std::pair{Rational(1, 2), Rational(1, 2)}, {Rational(1, 3), Rational(2, 3)}}) {
      int m = anti_pair_split(n, alpha, beta);
      AntiPair pair = anti_correlated_pair(n, alpha, beta);

      // weights 1 on [m]; the only live threshold sits at value m, where the
      // prefix sum equals g
      std::vector<Rational> u(static_cast<std::size_t>(n), 0), s(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < m; ++i) u[static_cast<std::size_t>(i)] = 1;
      s[static_cast<std::size_t>(m - 1)] = (1 - alpha) * m;
      log.require(seq_dominating_prime(n, u, s) == pair.a,
                  "first family mismatch at n=" + std::to_string(n));

      // weights -1 above m: the prefix sum at value m is -X with X the number
      // of larger values before m, and h = 1 + (n-m) - X, so h >= (1-beta)(n-m+1)
      // is exactly X <= beta(n-m+1); other thresholds are vacuous at -n
      std::vector<Rational> v(static_cast<std::size_t>(n), 0), t(static_cast<std::size_t>(n), Rational(-n));
      for (int i = m; i < n; ++i) v[static_cast<std::size_t>(i)] = -1;
      t[static_cast<std::size_t>(m - 1)] = -(beta * (n - m + 1));
      log.require(seq_dominating_prime(n, v, t) == pair.b,
                  "second family mismatch at n=" + std::to_string(n));
    }
  }
  CHECK(log.finish());
}
