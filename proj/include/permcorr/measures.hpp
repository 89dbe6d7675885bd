#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permcorr/permset.hpp"
#include "permcorr/permutation.hpp"
#include "permcorr/rational.hpp"
#include "permcorr/rng.hpp"

namespace permcorr {

// Probability measures on S_n come in two backings: product form over the
// Lehmer coordinates (one independent X_k on [k] per coordinate; the density
// of a is prod_k P(X_k = f(a)_k)), and dense (one mass per factoradic rank).
// The scalar S is Rational for exact work or double with tolerances.

inline constexpr int kMaxDenseMeasureN = 10;      // 10! masses
inline constexpr int kMaxDenseMeasureFlaggedN = 12;
inline constexpr double kFloatMassTolerance = 1e-12;

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static Rational from_ratio(std::int64_t p, std::int64_t q) { return Rational(p, q); }
  static double to_double(const Rational& x) { return permcorr::to_double(x); }
  static std::string to_string(const Rational& x) { return format_rational(x); }
};

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static double from_ratio(std::int64_t p, std::int64_t q) { return static_cast<double>(p) / static_cast<double>(q); }
  static double to_double(double x) { return x; }
  static std::string to_string(double x) { return std::to_string(x); }
};

template <class S>
struct CoordinateDistribution {
  int k = 0;             // coordinate index; X_k takes values in [k]
  std::vector<S> probs;  // probs[v-1] = P(X_k = v), length k

  void validate() const {
    if (k < 1 || static_cast<int>(probs.size()) != k)
      throw std::invalid_argument("coordinate distribution: wrong length");
    S total = S(0);
    for (const S& p : probs) {
      if (p < S(0)) throw std::invalid_argument("coordinate distribution: negative probability");
      total += p;
    }
    if constexpr (ScalarOps<S>::exact) {
      if (total != S(1)) throw std::invalid_argument("coordinate distribution: mass != 1");
    } else {
      if (std::abs(ScalarOps<S>::to_double(total) - 1.0) > kFloatMassTolerance)
        throw std::invalid_argument("coordinate distribution: mass != 1");
    }
  }
};

template <class S>
class Measure {
 public:
  static Measure product(std::vector<CoordinateDistribution<S>> dists) {
    if (dists.empty()) throw std::invalid_argument("measure: no coordinates");
    int n = static_cast<int>(dists.size());
    if (n > kMaxPermN) throw std::invalid_argument("measure: n out of [1,20]");
    for (int k = 1; k <= n; ++k) {
      if (dists[static_cast<std::size_t>(k - 1)].k != k)
        throw std::invalid_argument("measure: coordinate " + std::to_string(k) + " mislabeled");
      dists[static_cast<std::size_t>(k - 1)].validate();
    }
    Measure m;
    m.n_ = n;
    m.product_ = std::move(dists);
    m.build_product_cdf();
    if constexpr (ScalarOps<S>::exact) {
      m.uniform_ = true;
      for (const auto& d : m.product_)
        for (const S& p : d.probs)
          if (p != ScalarOps<S>::from_ratio(1, d.k)) { m.uniform_ = false; break; }
    }
    return m;
  }

  /// Normalizes the given nonnegative weights over all n! ranks.
  static Measure dense(int n, std::vector<S> weights, bool allow_large = false) {
    int cap = allow_large ? kMaxDenseMeasureFlaggedN : kMaxDenseMeasureN;
    if (n < 1 || n > cap) throw std::invalid_argument("dense measure: n out of [1," + std::to_string(cap) + "]");
    if (weights.size() != factorial(n)) throw std::invalid_argument("dense measure: wrong table length");
    S total = S(0);
    for (const S& w : weights) {
      if (w < S(0)) throw std::invalid_argument("dense measure: negative weight");
      total += w;
    }
    if (total == S(0)) throw std::invalid_argument("dense measure: zero total mass");
    for (S& w : weights) w /= total;
    Measure m;
    m.n_ = n;
    m.dense_ = std::move(weights);
    m.build_dense_cdf();
    return m;
  }

  int n() const { return n_; }
  bool is_product() const { return !product_.empty(); }

  const std::vector<CoordinateDistribution<S>>& coordinates() const { return product_; }
  const std::vector<S>& dense_table() const { return dense_; }

  S density(const Permutation& a) const {
    if (a.n() != n_) throw std::invalid_argument("density: mismatched n");
    if (is_product()) {
      const std::vector<int>& f = encode_lehmer(a).digits();
      S out = S(1);
      for (int k = 1; k <= n_; ++k)
        out *= product_[static_cast<std::size_t>(k - 1)].probs[static_cast<std::size_t>(f[static_cast<std::size_t>(k - 1)] - 1)];
      return out;
    }
    return dense_[rank_of(a)];
  }

  S density_by_rank(Rank r) const {
    if (!is_product()) return dense_[r];
    S out = S(1);
    for (int k = n_; k >= 1; --k) {
      std::uint64_t base = factorial(k - 1);
      int digit = static_cast<int>(r / base);  // digit = k - f_k
      r %= base;
      out *= product_[static_cast<std::size_t>(k - 1)].probs[static_cast<std::size_t>(k - 1 - digit)];
    }
    return out;
  }

  /// Per-rank densities; only for n small enough to materialize.
  std::vector<S> density_table() const {
    std::uint64_t nf = factorial(n_);
    std::vector<S> out;
    out.reserve(nf);
    for (Rank r = 0; r < nf; ++r) out.push_back(density_by_rank(r));
    return out;
  }

  S total_mass() const {
    if (is_product()) {
      S out = S(1);
      for (const auto& d : product_) {
        S coord = S(0);
        for (const S& p : d.probs) coord += p;
        out *= coord;
      }
      return out;
    }
    S out = S(0);
    for (const S& w : dense_) out += w;
    return out;
  }

  /// True only for exact scalars; lets set probabilities reduce to counts.
  bool is_uniform() const { return uniform_; }

  S measure_of_set(const PermSet& s) const {
    if (s.n() != n_) throw std::invalid_argument("measure_of_set: mismatched n");
    if (uniform_)
      return ScalarOps<S>::from_ratio(static_cast<std::int64_t>(s.size()),
                                      static_cast<std::int64_t>(factorial(n_)));
    S out = S(0);
    s.for_each([&](Rank r) { out += density_by_rank(r); });
    return out;
  }

  Permutation sample(Rng& rng) const {
    if (is_product()) {
      std::vector<int> f(static_cast<std::size_t>(n_));
      for (int k = 1; k <= n_; ++k) {
        const std::vector<double>& cdf = product_cdf_[static_cast<std::size_t>(k - 1)];
        double u = rng.real01();
        int v = 1;
        while (v < k && u >= cdf[static_cast<std::size_t>(v - 1)]) ++v;
        f[static_cast<std::size_t>(k - 1)] = v;
      }
      return decode_lehmer(LehmerCode(std::move(f)));
    }
    double u = rng.real01();
    auto it = std::upper_bound(dense_cdf_.begin(), dense_cdf_.end(), u);
    Rank r = static_cast<Rank>(it - dense_cdf_.begin());
    if (r >= dense_cdf_.size()) r = dense_cdf_.size() - 1;
    return unrank(r, n_);
  }

 private:
  Measure() = default;

  void build_product_cdf() {
    product_cdf_.clear();
    for (const auto& d : product_) {
      std::vector<double> cdf;
      double run = 0.0;
      for (const S& p : d.probs) {
        run += ScalarOps<S>::to_double(p);
        cdf.push_back(run);
      }
      cdf.back() = 1.0;
      product_cdf_.push_back(std::move(cdf));
    }
  }

  void build_dense_cdf() {
    dense_cdf_.clear();
    dense_cdf_.reserve(dense_.size());
    double run = 0.0;
    for (const S& w : dense_) {
      run += ScalarOps<S>::to_double(w);
      dense_cdf_.push_back(run);
    }
    dense_cdf_.back() = 1.0;
  }

  int n_ = 0;
  bool uniform_ = false;
  std::vector<CoordinateDistribution<S>> product_;
  std::vector<S> dense_;
  std::vector<std::vector<double>> product_cdf_;  // sampling only
  std::vector<double> dense_cdf_;                 // sampling only
};

template <class S>
Measure<S> uniform_measure(int n) {
  std::vector<CoordinateDistribution<S>> dists;
  for (int k = 1; k <= n; ++k) {
    CoordinateDistribution<S> d;
    d.k = k;
    d.probs.assign(static_cast<std::size_t>(k), ScalarOps<S>::from_ratio(1, k));
    dists.push_back(std::move(d));
  }
  return Measure<S>::product(std::move(dists));
}

template <class S>
Measure<S> ig_measure(std::vector<CoordinateDistribution<S>> dists) {
  return Measure<S>::product(std::move(dists));
}

// P(X_k = v) proportional to q^(k-v); the resulting density is q^|inv| / Z
// with Z = prod_k (1 + q + ... + q^(k-1)). q > 1 is accepted (the formula
// extends); callers that care warn on it.
template <class S>
Measure<S> mallows_measure(int n, const S& q) {
  if (q <= S(0)) throw std::invalid_argument("mallows: q must be positive");
  std::vector<CoordinateDistribution<S>> dists;
  for (int k = 1; k <= n; ++k) {
    std::vector<S> weights(static_cast<std::size_t>(k));
    S total = S(0);
    S power = S(1);
    for (int v = k; v >= 1; --v) {  // q^(k-v): build upward from v = k
      weights[static_cast<std::size_t>(v - 1)] = power;
      total += power;
      power *= q;
    }
    CoordinateDistribution<S> d;
    d.k = k;
    d.probs.resize(static_cast<std::size_t>(k));
    for (int v = 1; v <= k; ++v) d.probs[static_cast<std::size_t>(v - 1)] = weights[static_cast<std::size_t>(v - 1)] / total;
    dists.push_back(std::move(d));
  }
  return Measure<S>::product(std::move(dists));
}

int fixed_point_count(const Permutation& a);

template <class S>
Measure<S> fixed_point_measure(int n, const S& q) {
  if (q <= S(0) || q > S(1)) throw std::invalid_argument("fixed_point measure: q out of (0,1]");
  std::uint64_t nf = factorial(n);
  std::vector<S> weights;
  weights.reserve(nf);
  for (Rank r = 0; r < nf; ++r) {
    Permutation a = unrank(r, n);
    int expo = n - fixed_point_count(a);
    S w = S(1);
    for (int e = 0; e < expo; ++e) w *= q;
    weights.push_back(std::move(w));
  }
  return Measure<S>::dense(n, std::move(weights));
}

// Potential for the one-dimensional spatial measures: a named nondecreasing
// function, or an explicit step table (value of the largest threshold <= u,
// default 0 below the first threshold).
template <class S>
struct Potential {
  enum class Kind { abs, square, left_indicator, zero_indicator, table };

  Kind kind = Kind::abs;
  std::vector<std::pair<S, S>> steps;  // table only; sorted by threshold

  static Potential named(const std::string& name) {
    Potential p;
    if (name == "abs") p.kind = Kind::abs;
    else if (name == "square") p.kind = Kind::square;
    else if (name == "left_indicator") p.kind = Kind::left_indicator;
    else if (name == "zero_indicator") p.kind = Kind::zero_indicator;
    else throw std::invalid_argument("unknown potential '" + name + "'");
    return p;
  }

  static Potential table(std::vector<std::pair<S, S>> steps) {
    Potential p;
    p.kind = Kind::table;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (steps[i].second < S(0)) throw std::invalid_argument("potential table: negative value");
      if (i > 0 && !(steps[i - 1].first < steps[i].first))
        throw std::invalid_argument("potential table: thresholds must increase");
      if (i > 0 && steps[i].second < steps[i - 1].second)
        throw std::invalid_argument("potential table: values must be nondecreasing");
    }
    p.steps = std::move(steps);
    return p;
  }

  S operator()(const S& u) const {
    switch (kind) {
      case Kind::abs: return u < S(0) ? S(-u) : u;
      case Kind::square: return u * u;
      case Kind::left_indicator: return u < S(0) ? S(1) : S(0);
      case Kind::zero_indicator: return u == S(0) ? S(0) : S(1);
      case Kind::table: {
        S out = S(0);
        for (const auto& [threshold, value] : steps) {
          if (threshold <= u) out = value;
          else break;
        }
        return out;
      }
    }
    return S(0);
  }
};

namespace detail {

inline double boltzmann_mass(double q, double exponent) { return std::pow(q, exponent); }

inline Rational boltzmann_mass(const Rational& q, const Rational& exponent) {
  if (!is_integer(exponent))
    throw std::invalid_argument("boltzmann: exact arithmetic needs integer exponents; use the float backing");
  if (exponent < 0) throw std::invalid_argument("boltzmann: negative exponent");
  return pow_rational(q, numerator(exponent).convert_to<std::uint64_t>());
}

}  // namespace detail

/// Spatial measure mu(a) ~ q^(sum_i V(x_i - x_pos(a,i))) for nondecreasing
/// particle positions x.
template <class S>
Measure<S> boltzmann_measure(const std::vector<S>& x, const Potential<S>& v, const S& q) {
  int n = static_cast<int>(x.size());
  if (n < 1) throw std::invalid_argument("boltzmann: empty point list");
  for (int i = 1; i < n; ++i)
    if (x[static_cast<std::size_t>(i)] < x[static_cast<std::size_t>(i - 1)])
      throw std::invalid_argument("boltzmann: points must be nondecreasing");
  if (q <= S(0) || q > S(1)) throw std::invalid_argument("boltzmann: q out of (0,1]");
  std::uint64_t nf = factorial(n);
  std::vector<S> weights;
  weights.reserve(nf);
  for (Rank r = 0; r < nf; ++r) {
    Permutation a = unrank(r, n);
    std::vector<int> inv = a.inverse();
    S exponent = S(0);
    for (int i = 1; i <= n; ++i)
      exponent += v(x[static_cast<std::size_t>(i - 1)] - x[static_cast<std::size_t>(inv[static_cast<std::size_t>(i - 1)] - 1)]);
    weights.push_back(detail::boltzmann_mass(q, exponent));
  }
  return Measure<S>::dense(n, std::move(weights));
}

template <class S>
struct LatticeConditionReport {
  bool holds = false;
  bool symbolic = false;  // product-form identity, no scan performed
  std::uint64_t pairs_checked = 0;
  S worst_slack = S(0);   // min over pairs of mu(join)mu(meet) - mu(a)mu(b)
  Rank worst_a = 0, worst_b = 0;
};

/// Checks mu(a v b) mu(a ^ b) >= mu(a) mu(b) over all unordered pairs (the
/// grid join/meet). Product-form measures satisfy it with equality
/// coordinate by coordinate, so above the scan cap they short-circuit.
template <class S>
LatticeConditionReport<S> check_lattice_condition(const Measure<S>& mu, int scan_cap = 7) {
  LatticeConditionReport<S> report;
  int n = mu.n();
  if (n > scan_cap) {
    if (!mu.is_product())
      throw std::invalid_argument("check_lattice_condition: dense scan capped at n = " + std::to_string(scan_cap));
    report.holds = true;
    report.symbolic = true;
    return report;
  }
  std::uint64_t nf = factorial(n);
  std::vector<S> dens = mu.density_table();
  std::vector<std::vector<int>> digits(nf);
  for (Rank r = 0; r < nf; ++r) digits[r] = rank_digits(r, n);
  std::vector<int> join_digits(static_cast<std::size_t>(n)), meet_digits(static_cast<std::size_t>(n));
  bool first = true;
  for (Rank a = 0; a < nf; ++a) {
    for (Rank b = a + 1; b < nf; ++b) {
      // digits are k - f_k, so join takes the componentwise MIN of digits.
      for (int k = 0; k < n; ++k) {
        int da = digits[a][static_cast<std::size_t>(k)], db = digits[b][static_cast<std::size_t>(k)];
        join_digits[static_cast<std::size_t>(k)] = std::min(da, db);
        meet_digits[static_cast<std::size_t>(k)] = std::max(da, db);
      }
      Rank rj = rank_from_digits(join_digits);
      Rank rm = rank_from_digits(meet_digits);
      S slack = dens[rj] * dens[rm] - dens[a] * dens[b];
      ++report.pairs_checked;
      if (first || slack < report.worst_slack) {
        first = false;
        report.worst_slack = slack;
        report.worst_a = a;
        report.worst_b = b;
      }
    }
  }
  if (first) report.worst_slack = S(0);
  report.holds = !(report.worst_slack < S(0));
  return report;
}

using MeasureQ = Measure<Rational>;
using MeasureD = Measure<double>;

}  // namespace permcorr
