#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace permcorr {

// n! fits in uint64 up to n = 20.
inline constexpr int kMaxPermN = 20;

std::uint64_t factorial(int n);

using Rank = std::uint64_t;

/// Value pair {i, j} with i < j.
using ValuePair = std::pair<int, int>;

// A permutation of [1..n] in one-line notation. Values and positions are
// 1-based throughout, matching the usual combinatorial conventions.
//
// Convention used across this library: the identity sits at the TOP of all
// orders (sorting an inversion is an upward move), and rank(identity) = 0,
// rank(reversal) = n! - 1. This mirrors the textbook Bruhat convention, so
// off-the-shelf Bruhat criteria must be flipped before use here.
class Permutation {
 public:
  /// Validates that values is a rearrangement of 1..n.
  explicit Permutation(std::vector<int> values);

  static Permutation identity(int n);
  static Permutation reversed(int n);

  /// Parses comma-separated one-line notation, e.g. "3,1,2".
  static Permutation from_string(const std::string& text);

  /// Skips validation; callers must guarantee the invariant.
  static Permutation unchecked(std::vector<int> values);

  int n() const { return static_cast<int>(values_.size()); }

  /// Value at 1-based position.
  int at(int position) const { return values_[static_cast<std::size_t>(position - 1)]; }

  /// 1-based position of a value in [1..n].
  int pos(int value) const;

  const std::vector<int>& values() const { return values_; }

  /// inverse()[v-1] is the 1-based position of value v.
  std::vector<int> inverse() const;

  std::string to_string() const;

  bool operator==(const Permutation&) const = default;

 private:
  struct UncheckedTag {};
  Permutation(UncheckedTag, std::vector<int> values) : values_(std::move(values)) {}

  std::vector<int> values_;
};

/// All inversions {i,j}, i<j with pos(i) > pos(j), ordered lexicographically.
std::vector<ValuePair> inversions(const Permutation& a);

/// Inversions whose two values sit in consecutive positions.
std::vector<ValuePair> adjacent_inversions(const Permutation& a);

int inversion_count(const Permutation& a);

// Lehmer code f with f_k in [1..k]; f_k counts how many of 1..k appear at or
// before the position of k. Identity maps to (1,2,...,n), the reversal to
// (1,1,...,1). encode/decode form a bijection S_n <-> [1]x[2]x...x[n].
class LehmerCode {
 public:
  explicit LehmerCode(std::vector<int> f);  // validates 1 <= f_k <= k

  static LehmerCode from_string(const std::string& text);  // "1,2,1"

  int n() const { return static_cast<int>(f_.size()); }
  int at(int k) const { return f_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<int>& digits() const& { return f_; }
  std::vector<int> digits() && { return std::move(f_); }
  std::string to_string() const;

  bool operator==(const LehmerCode&) const = default;

 private:
  std::vector<int> f_;
};

LehmerCode encode_lehmer(const Permutation& a);
Permutation decode_lehmer(const LehmerCode& f);

/// rank = sum_k (k - f_k) (k-1)!, so rank(identity) = 0, rank(reversal) = n!-1.
Rank rank_of(const Permutation& a);
Permutation unrank(Rank r, int n);

/// Factoradic digits d_k = k - f_k of a rank, d[k-1] in [0, k-1].
std::vector<int> rank_digits(Rank r, int n);
Rank rank_from_digits(const std::vector<int>& digits);

/// Lattice operations of the grid order: componentwise max/min of Lehmer codes.
Permutation grid_join(const Permutation& a, const Permutation& b);
Permutation grid_meet(const Permutation& a, const Permutation& b);

/// |i - pos(a,i)|.
int displacement(const Permutation& a, int value);
std::vector<int> displacement_list(const Permutation& a);

/// Swaps the entries holding values i and j.
Permutation swap_values(const Permutation& a, int i, int j);

/// Calls fn(const std::vector<int>&) for every one-line array of S_n in
/// lexicographic order. The reference is only valid during the call.
template <class Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  const std::vector<int>& view = v;
  do {
    fn(view);
  } while (std::next_permutation(v.begin(), v.end()));
}

}  // namespace permcorr
