#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permcorr/permset.hpp"
#include "permcorr/permutation.hpp"
#include "permcorr/rational.hpp"
#include "permcorr/rng.hpp"

namespace permcorr {

inline constexpr int kMaxSetFamilyN = 20;
inline constexpr int kMaxChainEnumN = 10;  // chain counts iterate all n!

/// Subset of [1..n] as a bitmask; bit v-1 set iff v is in the subset.
using SubsetMask = std::uint32_t;

// A family of subsets of [1..n]: bitset over the 2^n characteristic masks.
class SetFamily {
 public:
  explicit SetFamily(int n);
  static SetFamily full(int n);

  int n() const { return n_; }
  std::uint64_t universe_size() const { return std::uint64_t{1} << n_; }

  bool contains(SubsetMask m) const { return (words_[m >> 6] >> (m & 63)) & 1; }
  void insert(SubsetMask m) { words_[m >> 6] |= std::uint64_t{1} << (m & 63); }
  void remove(SubsetMask m) { words_[m >> 6] &= ~(std::uint64_t{1} << (m & 63)); }

  std::uint64_t size() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        fn(static_cast<SubsetMask>((w << 6) + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const SetFamily&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Closed under replacing any member's element j by a smaller absent i.
bool is_left_compressed(const SetFamily& fam);

/// Applies i<j compressions in lexicographic rounds until fixpoint. Preserves
/// the family size and each member's cardinality; the result is
/// left-compressed.
SetFamily left_compress(const SetFamily& fam);

/// Prefix sets C_0 = {} through C_n = [n] of a, as masks.
std::vector<SubsetMask> chain_of_perm(const Permutation& a);

/// Number of maximal chains meeting the family (counting C_0 and C_n).
std::uint64_t chain_count(const SetFamily& fam);

/// Number of maximal chains meeting both families.
std::uint64_t chain_count2(const SetFamily& a, const SetFamily& b);

/// {a : some prefix set of a lies in fam}; a strong up-set whenever fam is
/// left-compressed.
PermSet chain_up_set(const SetFamily& fam);

/// N_fam of the chain of a: how many of its n+1 prefix sets lie in fam.
int chain_stat(const SetFamily& fam, const Permutation& a);

struct JointTailReport {
  Rational p_joint, p_a, p_b;
  Rational slack;  // p_joint - p_a * p_b
  bool holds = false;
  bool inputs_compressed = false;  // both inputs passed is_left_compressed
};

/// Exact P(N_A >= k, N_B >= l) vs the product, under a uniform random
/// maximal chain. Computes regardless of compression; the guarantee only
/// applies when both inputs are left-compressed.
JointTailReport joint_tail_check(const SetFamily& a, const SetFamily& b, int k, int l);

/// Bernoulli(density) family; compose with left_compress for random
/// compressed families.
SetFamily random_set_family(int n, double density, Rng& rng);

}  // namespace permcorr
