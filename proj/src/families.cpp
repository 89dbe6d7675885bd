#include "permcorr/families.hpp"

#include <algorithm>
#include <stdexcept>

namespace permcorr {

PermSet make_set(int n, const PermPredicate& pred) {
  PermSet s(n);
  std::uint64_t nf = factorial(n);
  for (Rank r = 0; r < nf; ++r)
    if (pred(unrank(r, n))) s.insert(r);
  return s;
}

PermSet u_ij(int n, int i, int j) {
  if (i == j) throw std::invalid_argument("u_ij: i and j must differ");
  if (i < 1 || i > n || j < 1 || j > n) throw std::invalid_argument("u_ij: value out of [1,n]");
  return make_set(n, [i, j](const Permutation& a) { return a.pos(i) < a.pos(j); });
}

namespace {

int max_inversions(int n) { return n * (n - 1) / 2; }

// |inv| = sum of factoradic digits; avoids decoding.
int inv_count_of_rank(Rank r, int n) {
  int total = 0;
  for (int k = n; k >= 1; --k) {
    std::uint64_t base = factorial(k - 1);
    total += static_cast<int>(r / base);
    r %= base;
  }
  return total;
}

PermSet layer_set(int n, int k, bool cumulative) {
  if (k < 0 || k > max_inversions(n)) throw std::invalid_argument("layer: k out of [0, n(n-1)/2]");
  PermSet s(n);
  std::uint64_t nf = factorial(n);
  for (Rank r = 0; r < nf; ++r) {
    int c = inv_count_of_rank(r, n);
    if (cumulative ? c <= k : c == k) s.insert(r);
  }
  return s;
}

}  // namespace

PermSet layer(int n, int k) { return layer_set(n, k, false); }
PermSet layers_le(int n, int k) { return layer_set(n, k, true); }

bool in_t_band(const Permutation& a, int t) {
  for (int d : displacement_list(a))
    if (d > t) return false;
  return true;
}

PermSet t_band(int n, int t) {
  if (t < 0 || t > n - 1) throw std::invalid_argument("t_band: t out of [0, n-1]");
  return make_set(n, [t](const Permutation& a) { return in_t_band(a, t); });
}

bool validate_band_like(int n, const DisplacementVectors& d) {
  for (const std::vector<int>& vec : d) {
    if (static_cast<int>(vec.size()) != n) throw std::invalid_argument("band_like: vector of wrong length");
    for (int e : vec)
      if (e < 0 || e > n - 1) throw std::invalid_argument("band_like: entry out of [0, n-1]");
  }
  for (const std::vector<int>& vec : d) {
    // reordering: transpositions generate all of them
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (vec[static_cast<std::size_t>(i)] == vec[static_cast<std::size_t>(j)]) continue;
        std::vector<int> swapped = vec;
        std::swap(swapped[static_cast<std::size_t>(i)], swapped[static_cast<std::size_t>(j)]);
        if (!d.count(swapped)) return false;
      }
    // decreasing any entry
    for (int i = 0; i < n; ++i) {
      if (vec[static_cast<std::size_t>(i)] == 0) continue;
      std::vector<int> lowered = vec;
      --lowered[static_cast<std::size_t>(i)];
      if (!d.count(lowered)) return false;
    }
    // replacing two entries without raising sum or absolute difference
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int sum = vec[static_cast<std::size_t>(i)] + vec[static_cast<std::size_t>(j)];
        int diff = std::abs(vec[static_cast<std::size_t>(i)] - vec[static_cast<std::size_t>(j)]);
        for (int x = 0; x <= n - 1; ++x)
          for (int y = 0; y <= n - 1; ++y) {
            if (x + y > sum || std::abs(x - y) > diff) continue;
            std::vector<int> replaced = vec;
            replaced[static_cast<std::size_t>(i)] = x;
            replaced[static_cast<std::size_t>(j)] = y;
            if (!d.count(replaced)) return false;
          }
      }
  }
  return true;
}

PermSet band_like(int n, const DisplacementVectors& d) {
  for (const std::vector<int>& vec : d)
    if (static_cast<int>(vec.size()) != n) throw std::invalid_argument("band_like: vector of wrong length");
  return make_set(n, [&d](const Permutation& a) { return d.count(displacement_list(a)) > 0; });
}

bool in_band_preset(const Permutation& a, BandPreset preset, long long t) {
  std::vector<int> d = displacement_list(a);
  switch (preset) {
    case BandPreset::max_le:
      return *std::max_element(d.begin(), d.end()) <= t;
    case BandPreset::sum_le: {
      long long s = 0;
      for (int e : d) s += e;
      return s <= t;
    }
    case BandPreset::sum_sq_le: {
      long long s = 0;
      for (int e : d) s += static_cast<long long>(e) * e;
      return s <= t;
    }
  }
  return false;
}

PermSet band_like_preset(int n, BandPreset preset, long long t) {
  if (t < 0) throw std::invalid_argument("band_like_preset: t must be >= 0");
  return make_set(n, [preset, t](const Permutation& a) { return in_band_preset(a, preset, t); });
}

namespace {

void check_weight_lengths(int n, const std::vector<Rational>& w, const std::vector<Rational>& t) {
  if (static_cast<int>(w.size()) != n || static_cast<int>(t.size()) != n)
    throw std::invalid_argument("sequential domination: w and t must have length n");
}

bool prefix_dominates(const Permutation& a, const std::vector<Rational>& w, const std::vector<Rational>& t,
                      bool threshold_by_value) {
  Rational run = 0;
  for (int m = 1; m <= a.n(); ++m) {
    int value = a.at(m);
    run += w[static_cast<std::size_t>(value - 1)];
    const Rational& bound = threshold_by_value ? t[static_cast<std::size_t>(value - 1)] : t[static_cast<std::size_t>(m - 1)];
    if (run < bound) return false;
  }
  return true;
}

}  // namespace

bool in_seq_dominating(const Permutation& a, const std::vector<Rational>& w, const std::vector<Rational>& t) {
  check_weight_lengths(a.n(), w, t);
  return prefix_dominates(a, w, t, false);
}

PermSet seq_dominating(int n, const std::vector<Rational>& w, const std::vector<Rational>& t) {
  check_weight_lengths(n, w, t);
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] > w[i - 1])
      throw std::invalid_argument("seq_dominating: weights must be nonincreasing (the up-set guarantee needs it)");
  return make_set(n, [&](const Permutation& a) { return prefix_dominates(a, w, t, false); });
}

bool in_seq_dominating_prime(const Permutation& a, const std::vector<Rational>& w, const std::vector<Rational>& t) {
  check_weight_lengths(a.n(), w, t);
  return prefix_dominates(a, w, t, true);
}

PermSet seq_dominating_prime(int n, const std::vector<Rational>& w, const std::vector<Rational>& t) {
  check_weight_lengths(n, w, t);
  return make_set(n, [&](const Permutation& a) { return prefix_dominates(a, w, t, true); });
}

int g_stat(const Permutation& a, int m) {
  if (m < 1 || m > a.n()) throw std::invalid_argument("g_stat: m out of [1,n]");
  std::vector<int> inv = a.inverse();
  int pm = inv[static_cast<std::size_t>(m - 1)];
  int c = 0;
  for (int i = 1; i <= m; ++i)
    if (inv[static_cast<std::size_t>(i - 1)] <= pm) ++c;
  return c;
}

int h_stat(const Permutation& a, int m) {
  if (m < 1 || m > a.n()) throw std::invalid_argument("h_stat: m out of [1,n]");
  std::vector<int> inv = a.inverse();
  int pm = inv[static_cast<std::size_t>(m - 1)];
  int c = 0;
  for (int i = m; i <= a.n(); ++i)
    if (inv[static_cast<std::size_t>(i - 1)] >= pm) ++c;
  return c;
}

namespace {

void check_unit_interval(const Rational& x, const char* name) {
  if (x <= 0 || x >= 1) throw std::invalid_argument(std::string(name) + " must lie strictly in (0,1)");
}

// ceil(x) as an int; for integer statistics, s >= x iff s >= ceil(x).
int ceil_to_int(const Rational& x) {
  BigInt num = numerator(x), den = denominator(x);
  BigInt q = num / den;
  if (q * den < num) ++q;
  return static_cast<int>(q.convert_to<long long>());
}

// floor(x) as an int.
int floor_to_int(const Rational& x) {
  BigInt num = numerator(x), den = denominator(x);
  BigInt q = num / den;
  if (q * den > num) --q;
  return static_cast<int>(q.convert_to<long long>());
}

}  // namespace

int anti_pair_split(int n, const Rational& alpha, const Rational& beta) {
  check_unit_interval(alpha, "alpha");
  check_unit_interval(beta, "beta");
  return ceil_to_int(Rational(alpha * n) / (alpha + beta));
}

bool in_anti_pair_a(const Permutation& p, const Rational& alpha, const Rational& beta) {
  int m = anti_pair_split(p.n(), alpha, beta);
  return Rational(g_stat(p, m)) >= (1 - alpha) * m;
}

bool in_anti_pair_b(const Permutation& p, const Rational& alpha, const Rational& beta) {
  int n = p.n();
  int m = anti_pair_split(n, alpha, beta);
  return Rational(h_stat(p, m)) >= (1 - beta) * (n - m + 1);
}

AntiPair anti_correlated_pair(int n, const Rational& alpha, const Rational& beta) {
  int m = anti_pair_split(n, alpha, beta);
  int bound_a = ceil_to_int((1 - alpha) * m);
  int bound_b = ceil_to_int((1 - beta) * (n - m + 1));
  AntiPair pair{m, PermSet(n), PermSet(n)};
  std::uint64_t nf = factorial(n);
  for (Rank r = 0; r < nf; ++r) {
    Permutation p = unrank(r, n);
    if (g_stat(p, m) >= bound_a) pair.a.insert(r);
    if (h_stat(p, m) >= bound_b) pair.b.insert(r);
  }
  return pair;
}

std::pair<PermSet, PermSet> exceptional_families(int n, const Rational& alpha, const Rational& beta,
                                                 const Rational& eps) {
  check_unit_interval(alpha, "alpha");
  check_unit_interval(beta, "beta");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie strictly in (0,1)");
  int m = anti_pair_split(n, alpha, beta);

  int left_max = floor_to_int((1 - alpha - eps) * n);   // positions k <= this
  int right_min = ceil_to_int((beta + eps) * n);        // positions k >= this
  int bound1 = ceil_to_int((1 - alpha) * m);            // threshold on |V1| = m
  int bound2 = ceil_to_int((1 - beta) * (n - m + 1));   // threshold on |V2| = n-m+1

  PermSet e1(n), e2(n);
  std::uint64_t nf = factorial(n);
  for (Rank r = 0; r < nf; ++r) {
    Permutation p = unrank(r, n);
    int n1 = 0, n2 = 0;
    for (int k = 1; k <= n; ++k) {
      int value = p.at(k);
      if (k <= left_max && value <= m) ++n1;
      if (k >= right_min && value >= m) ++n2;
    }
    if (n1 >= bound1) e1.insert(r);
    if (n2 >= bound2) e2.insert(r);
  }
  return {std::move(e1), std::move(e2)};
}

}  // namespace permcorr
