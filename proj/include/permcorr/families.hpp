#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "permcorr/permset.hpp"
#include "permcorr/permutation.hpp"
#include "permcorr/rational.hpp"

namespace permcorr {

/// Membership test usable at any n (Monte Carlo paths); materializers below
/// build the corresponding PermSet for small n.
using PermPredicate = std::function<bool(const Permutation&)>;

PermSet make_set(int n, const PermPredicate& pred);

/// {a : i occurs before j}; |result| = n!/2.
PermSet u_ij(int n, int i, int j);

/// {a : |inv(a)| = k}.
PermSet layer(int n, int k);

/// {a : |inv(a)| <= k}. This is the upward-closed layer family under the
/// identity-on-top orientation; it corresponds to the "at least binom(n,2)-k
/// inversions" family of the sorted-at-bottom convention via k' = binom(n,2)-k.
PermSet layers_le(int n, int k);

/// {a : every displacement |i - pos(a,i)| <= t}; a strong up-set.
PermSet t_band(int n, int t);
bool in_t_band(const Permutation& a, int t);

// Band-like families A(D) = {a : displacement list of a lies in D}.
// A valid D is closed under reordering entries, decreasing an entry, and
// replacing two entries without increasing their sum or absolute difference;
// then A(D) is a strong up-set.
using DisplacementVectors = std::set<std::vector<int>>;

bool validate_band_like(int n, const DisplacementVectors& d);
PermSet band_like(int n, const DisplacementVectors& d);

enum class BandPreset { max_le, sum_le, sum_sq_le };
bool in_band_preset(const Permutation& a, BandPreset preset, long long t);
PermSet band_like_preset(int n, BandPreset preset, long long t);

/// D(w,t): prefix weight sums meet thresholds, sum_{i<=m} w_{a_i} >= t_m for
/// every m. Requires nonincreasing w (that is what makes it a strong up-set).
PermSet seq_dominating(int n, const std::vector<Rational>& w, const std::vector<Rational>& t);
bool in_seq_dominating(const Permutation& a, const std::vector<Rational>& w, const std::vector<Rational>& t);

/// D'(w,t): thresholds indexed by the value at the prefix end,
/// sum_{i<=m} w_{a_i} >= t_{a_m}. Not an up-set in general.
PermSet seq_dominating_prime(int n, const std::vector<Rational>& w, const std::vector<Rational>& t);
bool in_seq_dominating_prime(const Permutation& a, const std::vector<Rational>& w, const std::vector<Rational>& t);

/// g = |{i in [m] : pos(a,i) <= pos(a,m)}|, in [1..m]. Equals the m-th Lehmer
/// coordinate, so it partitions S_n into m classes of size n!/m.
int g_stat(const Permutation& a, int m);

/// h = |{i in [m..n] : pos(a,i) >= pos(a,m)}|, in [1..n-m+1].
int h_stat(const Permutation& a, int m);

/// m = ceil(alpha/(alpha+beta) * n); couples the two families below.
int anti_pair_split(int n, const Rational& alpha, const Rational& beta);

// The anti-correlated pair: A = {g >= (1-alpha) m}, B = {h >= (1-beta)(n-m+1)}
// with m as above. Both are weak up-sets with |A| >= alpha n!, |B| >= beta n!.
struct AntiPair {
  int m = 0;
  PermSet a, b;
};
AntiPair anti_correlated_pair(int n, const Rational& alpha, const Rational& beta);

bool in_anti_pair_a(const Permutation& p, const Rational& alpha, const Rational& beta);
bool in_anti_pair_b(const Permutation& p, const Rational& alpha, const Rational& beta);

/// Exceptional families E1, E2 used to chart the anti-correlation mechanism:
/// E1 = {|{k <= (1-alpha-eps)n : a_k <= m}| >= (1-alpha) m}, and symmetrically
/// E2 over positions >= (beta+eps)n and values >= m. Diagnostic only.
std::pair<PermSet, PermSet> exceptional_families(int n, const Rational& alpha, const Rational& beta,
                                                 const Rational& eps);

}  // namespace permcorr
