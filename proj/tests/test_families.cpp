#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "permcorr/families.hpp"
#include "permcorr/orders.hpp"
#include "permcorr/rng.hpp"

using namespace permcorr;

namespace {

PermSet set_of(int n, std::initializer_list<const char*> perms) {
  PermSet s(n);
  for (const char* p : perms) s.insert(Permutation::from_string(p));
  return s;
}

DisplacementVectors all_vectors(int n) {
  DisplacementVectors d;
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  for (;;) {
    d.insert(v);
    int i = 0;
    while (i < n && v[static_cast<std::size_t>(i)] == n - 1) {
      v[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == n) break;
    ++v[static_cast<std::size_t>(i)];
  }
  return d;
}

DisplacementVectors preset_vectors(int n, BandPreset preset, long long t) {
  DisplacementVectors out;
  for (const std::vector<int>& v : all_vectors(n)) {
    long long sum = 0, sum_sq = 0, mx = 0;
    for (int e : v) {
      sum += e;
      sum_sq += static_cast<long long>(e) * e;
      mx = std::max<long long>(mx, e);
    }
    bool in = preset == BandPreset::max_le ? mx <= t : preset == BandPreset::sum_le ? sum <= t : sum_sq <= t;
    if (in) out.insert(v);
  }
  return out;
}

}  // namespace

TEST_CASE("u_ij") {
  CHECK(u_ij(3, 1, 2) == set_of(3, {"1,2,3", "1,3,2", "3,1,2"}));
  CHECK_THROWS_AS(u_ij(3, 2, 2), std::invalid_argument);
  for (int n = 2; n <= 5; ++n) {
    PermSet u12 = u_ij(n, 1, 2), u21 = u_ij(n, 2, 1);
    CHECK(u12.size() == factorial(n) / 2);
    CHECK(u12.intersection_size(u21) == 0);
    CHECK((u12 | u21) == PermSet::full(n));
  }
  CHECK(u_ij(3, 1, 2).intersection_size(u_ij(3, 2, 3)) == 1);  // only 1,2,3
}

TEST_CASE("layers") {
  int top = 3 * 2 / 2;
  CHECK(layers_le(3, top) == PermSet::full(3));
  CHECK(layers_le(3, 0) == PermSet::singleton(Permutation::identity(3)));
  CHECK(layers_le(3, 1) == set_of(3, {"1,2,3", "1,3,2", "2,1,3"}));
  CHECK_THROWS_AS(layers_le(3, 4), std::invalid_argument);

  for (int n = 2; n <= 6; ++n) {
    std::uint64_t total = 0;
    for (int k = 0; k <= n * (n - 1) / 2; ++k) total += layer(n, k).size();
    CHECK(total == factorial(n));
  }
}

TEST_CASE("t_band") {
  CHECK(t_band(3, 2) == PermSet::full(3));
  CHECK(t_band(3, 0) == PermSet::singleton(Permutation::identity(3)));
  CHECK(t_band(3, 1) == set_of(3, {"1,2,3", "2,1,3", "1,3,2"}));
  CHECK_THROWS_AS(t_band(3, 3), std::invalid_argument);
}

TEST_CASE("band_like explicit sets") {
  CHECK(band_like(3, all_vectors(3)) == PermSet::full(3));
  CHECK(validate_band_like(3, all_vectors(3)));

  for (long long t : {0, 2, 4}) {
    DisplacementVectors sum_set = preset_vectors(3, BandPreset::sum_le, t);
    CHECK(validate_band_like(3, sum_set));
    CHECK(band_like(3, sum_set) == band_like_preset(3, BandPreset::sum_le, t));
  }
  DisplacementVectors sq_set = preset_vectors(3, BandPreset::sum_sq_le, 2);
  CHECK(validate_band_like(3, sq_set));
  CHECK(band_like(3, sq_set) == band_like_preset(3, BandPreset::sum_sq_le, 2));
  DisplacementVectors max_set = preset_vectors(4, BandPreset::max_le, 1);
  CHECK(validate_band_like(4, max_set));
  CHECK(band_like(4, max_set) == t_band(4, 1));

  // dropping the zero vector breaks closedness under decreasing
  DisplacementVectors broken = preset_vectors(3, BandPreset::sum_le, 2);
  broken.erase(std::vector<int>{0, 0, 0});
  CHECK_FALSE(validate_band_like(3, broken));
}

TEST_CASE("named strong up-set families really are strong up-sets") {
  Rng rng(123);
  for (int n = 2; n <= 5; ++n) {
    Order strong(n, OrderKind::strong());
    for (int t = 0; t <= n - 1; ++t) CHECK(strong.is_up_set(t_band(n, t)));
    for (int k = 0; k <= n * (n - 1) / 2; ++k) CHECK(strong.is_up_set(layers_le(n, k)));
    for (long long t = 0; t <= 2 * n; ++t) {
      CHECK(strong.is_up_set(band_like_preset(n, BandPreset::sum_le, t)));
      CHECK(strong.is_up_set(band_like_preset(n, BandPreset::sum_sq_le, t)));
    }
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rational> w, thresholds;
      for (int i = 0; i < n; ++i) {
        w.push_back(Rational(rng.below(8), 1 + rng.below(3)));
        thresholds.push_back(Rational(rng.below(6), 1 + rng.below(3)));
      }
      std::sort(w.rbegin(), w.rend());
      CHECK(strong.is_up_set(seq_dominating(n, w, thresholds)));
    }
  }
}

TEST_CASE("sequential domination") {
  std::vector<Rational> w = {1, 0, 0};
  std::vector<Rational> lo = {Rational(-100), Rational(-100), Rational(-100)};
  CHECK(seq_dominating(3, w, lo) == PermSet::full(3));

  std::vector<Rational> t = {1, 0, 0};
  CHECK(seq_dominating(3, w, t) == set_of(3, {"1,2,3", "1,3,2"}));

  std::vector<Rational> increasing = {0, 1, 1};
  CHECK_THROWS_AS(seq_dominating(3, increasing, t), std::invalid_argument);

  // "at least a of {1..b} among the first c positions"
  int n = 4, a = 1, b = 2, c = 2;
  std::vector<Rational> wb(static_cast<std::size_t>(n), 0), tc(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < b; ++i) wb[static_cast<std::size_t>(i)] = 1;
  tc[static_cast<std::size_t>(c - 1)] = a;
  PermSet direct = make_set(n, [&](const Permutation& p) {
    int hits = 0;
    for (int pos = 1; pos <= c; ++pos)
      if (p.at(pos) <= b) ++hits;
    return hits >= a;
  });
  CHECK(seq_dominating(n, wb, tc) == direct);
}

TEST_CASE("prime variant membership") {
  std::vector<Rational> w = {1, 0, 0};
  std::vector<Rational> lo = {Rational(-100), Rational(-100), Rational(-100)};
  CHECK(seq_dominating_prime(3, w, lo) == PermSet::full(3));

  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> wr, tr;
    for (int i = 0; i < 3; ++i) {
      wr.push_back(Rational(static_cast<std::int64_t>(rng.below(9)) - 4, 1 + rng.below(3)));
      tr.push_back(Rational(static_cast<std::int64_t>(rng.below(9)) - 4, 1 + rng.below(3)));
    }
    PermSet lib = seq_dominating_prime(3, wr, tr);
    // direct evaluation of the defining condition
    for (Rank r = 0; r < 6; ++r) {
      Permutation p = unrank(r, 3);
      Rational run = 0;
      bool ok = true;
      for (int m = 1; m <= 3; ++m) {
        run += wr[static_cast<std::size_t>(p.at(m) - 1)];
        if (run < tr[static_cast<std::size_t>(p.at(m) - 1)]) ok = false;
      }
      CHECK(lib.contains(r) == ok);
    }
  }
}

TEST_CASE("g and h statistics") {
  for (int n = 2; n <= 6; ++n) {
    for (int m = 1; m <= n; ++m) {
      CHECK(g_stat(Permutation::identity(n), m) == m);
      CHECK(h_stat(Permutation::identity(n), m) == n - m + 1);
      CHECK(g_stat(Permutation::reversed(n), m) == 1);
      CHECK(h_stat(Permutation::reversed(n), m) == 1);
    }
  }
  CHECK_THROWS_AS(g_stat(Permutation::identity(3), 0), std::invalid_argument);
  CHECK_THROWS_AS(h_stat(Permutation::identity(3), 4), std::invalid_argument);

  // g partitions S_n into m classes of size n!/m, and likewise h into n-m+1
  for (int n = 2; n <= 6; ++n) {
    for (int m = 1; m <= n; ++m) {
      std::vector<std::uint64_t> g_classes(static_cast<std::size_t>(m) + 1, 0);
      std::vector<std::uint64_t> h_classes(static_cast<std::size_t>(n - m + 1) + 1, 0);
      for_each_permutation(n, [&](const std::vector<int>& values) {
        Permutation p(values);
        ++g_classes[static_cast<std::size_t>(g_stat(p, m))];
        ++h_classes[static_cast<std::size_t>(h_stat(p, m))];
      });
      for (int i = 1; i <= m; ++i) CHECK(g_classes[static_cast<std::size_t>(i)] == factorial(n) / m);
      for (int i = 1; i <= n - m + 1; ++i)
        CHECK(h_classes[static_cast<std::size_t>(i)] == factorial(n) / (n - m + 1));
    }
  }

  // g equals the m-th Lehmer coordinate
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.below(7));
    Permutation p = unrank(rng.below(factorial(n)), n);
    int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    CHECK(g_stat(p, m) == encode_lehmer(p).at(m));
  }
}

TEST_CASE("anti-correlated pair") {
  CHECK_THROWS_AS(anti_correlated_pair(4, Rational(0), Rational(1, 2)), std::invalid_argument);

  // alpha near 1: the g threshold drops to 1, so A swallows everything
  AntiPair wide = anti_correlated_pair(5, Rational(99, 100), Rational(99, 100));
  CHECK(wide.a == PermSet::full(5));

  AntiPair pair = anti_correlated_pair(6, Rational(1, 2), Rational(1, 2));
  CHECK(pair.m == 3);
  CHECK(pair.a.size() == 480);  // g in {2,3}, classes of 240
  CHECK(pair.b.size() == 540);  // h in {2,3,4}, classes of 180

  // recount against the raw statistics
  std::uint64_t ca = 0, cb = 0, cab = 0;
  for_each_permutation(6, [&](const std::vector<int>& values) {
    Permutation p(values);
    bool in_a = 2 * g_stat(p, 3) >= 3;      // g >= (1-alpha)m = 3/2
    bool in_b = 2 * h_stat(p, 3) >= 4;      // h >= (1-beta)(n-m+1) = 2
    if (in_a) ++ca;
    if (in_b) ++cb;
    if (in_a && in_b) ++cab;
  });
  CHECK(pair.a.size() == ca);
  CHECK(pair.b.size() == cb);
  CHECK(pair.a.intersection_size(pair.b) == cab);

  // size lower bounds |A| >= alpha n!, |B| >= beta n!
  for (int n = 4; n <= 8; ++n) {
    for (auto [alpha, beta] : {std::pair{Rational(1, 2), Rational(1, 2)}, {Rational(1, 3), Rational(2, 3)},
                               {Rational(3, 4), Rational(1, 5)}}) {
      AntiPair p = anti_correlated_pair(n, alpha, beta);
      CHECK(Rational(p.a.size()) >= alpha * Rational(factorial(n)));
      CHECK(Rational(p.b.size()) >= beta * Rational(factorial(n)));
    }
  }
}

TEST_CASE("anti pair members match the predicates") {
  Rational alpha(1, 3), beta(3, 5);
  AntiPair pair = anti_correlated_pair(5, alpha, beta);
  for (Rank r = 0; r < factorial(5); ++r) {
    Permutation p = unrank(r, 5);
    CHECK(pair.a.contains(r) == in_anti_pair_a(p, alpha, beta));
    CHECK(pair.b.contains(r) == in_anti_pair_b(p, alpha, beta));
  }
}

TEST_CASE("anti pair sides are weak up-sets, generically not strong") {
  for (int n = 5; n <= 6; ++n) {
    for (auto [alpha, beta] : {std::pair{Rational(1, 2), Rational(1, 2)}, {Rational(2, 5), Rational(2, 3)}}) {
      AntiPair pair = anti_correlated_pair(n, alpha, beta);
      Order weak(n, OrderKind::weak());
      CHECK(weak.is_up_set(pair.a));
      CHECK(weak.is_up_set(pair.b));
    }
  }
  for (int n = 7; n <= 8; ++n) {
    AntiPair pair = anti_correlated_pair(n, Rational(1, 2), Rational(1, 2));
    Order weak(n, OrderKind::weak());
    CHECK(weak.is_up_set(pair.a));
    CHECK(weak.is_up_set(pair.b));
  }
  Order strong(6, OrderKind::strong());
  AntiPair pair = anti_correlated_pair(6, Rational(1, 2), Rational(1, 2));
  CHECK_FALSE(strong.is_up_set(pair.a));
  CHECK_FALSE(strong.is_up_set(pair.b));
}

TEST_CASE("exceptional families") {
  // eps close to 1 empties the windows
  auto [e1, e2] = exceptional_families(6, Rational(1, 2), Rational(1, 2), Rational(9, 10));
  CHECK(e1.empty());

  // recount at n = 6, eps = 1/10
  int n = 6;
  Rational alpha(1, 2), beta(1, 2), eps(1, 10);
  auto [f1, f2] = exceptional_families(n, alpha, beta, eps);
  int m = anti_pair_split(n, alpha, beta);
  std::uint64_t c1 = 0, c2 = 0;
  for_each_permutation(n, [&](const std::vector<int>& values) {
    Permutation p(values);
    int n1 = 0, n2 = 0;
    for (int k = 1; k <= n; ++k) {
      if (Rational(k) <= (1 - alpha - eps) * n && p.at(k) <= m) ++n1;
      if (Rational(k) >= (beta + eps) * n && p.at(k) >= m) ++n2;
    }
    if (Rational(n1) >= (1 - alpha) * m) ++c1;
    if (Rational(n2) >= (1 - beta) * (n - m + 1)) ++c2;
  });
  CHECK(f1.size() == c1);
  CHECK(f2.size() == c2);

  // Density oracle: membership in E1 depends only on how many of the m
  // smallest values land in the position window, so the density is a
  // hypergeometric tail; symmetrically for E2 with the n-m+1 largest values.
  auto hyper_tail = [](int nn, int window, int good, int need) {
    if (need <= 0) return Rational(1);
    if (window < 0) window = 0;
    auto binom = [](int a, int b) {
      if (b < 0 || b > a) return Rational(0);
      Rational out = 1;
      for (int i = 0; i < b; ++i) out = out * (a - i) / (i + 1);
      return out;
    };
    Rational total = binom(nn, window), hit = 0;
    for (int j = need; j <= window; ++j) hit += binom(good, j) * binom(nn - good, window - j);
    return total == 0 ? Rational(need <= 0 ? 1 : 0) : hit / total;
  };
  auto floor_q = [](const Rational& x) {
    BigInt q = numerator(x) / denominator(x);
    if (q * denominator(x) > numerator(x)) --q;
    return static_cast<int>(q.convert_to<long long>());
  };
  auto ceil_q = [](const Rational& x) {
    BigInt q = numerator(x) / denominator(x);
    if (q * denominator(x) < numerator(x)) ++q;
    return static_cast<int>(q.convert_to<long long>());
  };
  for (int nn : {6, 7, 8, 10}) {
    auto [g1, g2] = exceptional_families(nn, alpha, beta, eps);
    int mm = anti_pair_split(nn, alpha, beta);
    int w1 = floor_q((1 - alpha - eps) * nn);            // positions 1..w1
    int need1 = ceil_q((1 - alpha) * mm);
    int w2 = nn - ceil_q((beta + eps) * nn) + 1;         // positions >= cut
    int need2 = ceil_q((1 - beta) * (nn - mm + 1));
    CHECK(Rational(g1.size(), factorial(nn)) == hyper_tail(nn, w1, mm, need1));
    CHECK(Rational(g2.size(), factorial(nn)) == hyper_tail(nn, w2, nn - mm + 1, need2));
  }
}
