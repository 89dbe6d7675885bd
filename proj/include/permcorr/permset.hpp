#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "permcorr/permutation.hpp"

namespace permcorr {

// Hard cap for rank-indexed bitsets: 12! bits is ~60 MB. Drivers that scan
// whole families impose their own, tighter caps.
inline constexpr int kMaxPermSetN = 12;

// A family of permutations of fixed n, stored as a bitset over the n!
// factoradic ranks.
class PermSet {
 public:
  explicit PermSet(int n);
  static PermSet full(int n);
  static PermSet singleton(const Permutation& a);

  int n() const { return n_; }
  std::uint64_t universe_size() const { return universe_; }

  bool contains(Rank r) const { return (words_[r >> 6] >> (r & 63)) & 1; }
  bool contains(const Permutation& a) const { return contains(rank_of(a)); }
  void insert(Rank r) { words_[r >> 6] |= std::uint64_t{1} << (r & 63); }
  void insert(const Permutation& a) { insert(rank_of(a)); }
  void remove(Rank r) { words_[r >> 6] &= ~(std::uint64_t{1} << (r & 63)); }

  std::uint64_t size() const;
  bool empty() const;

  PermSet& operator&=(const PermSet& other);
  PermSet& operator|=(const PermSet& other);
  PermSet& operator-=(const PermSet& other);
  friend PermSet operator&(PermSet a, const PermSet& b) { return a &= b; }
  friend PermSet operator|(PermSet a, const PermSet& b) { return a |= b; }
  friend PermSet operator-(PermSet a, const PermSet& b) { return a -= b; }
  PermSet complement() const;

  bool is_subset_of(const PermSet& other) const;
  std::uint64_t intersection_size(const PermSet& other) const;

  bool operator==(const PermSet&) const = default;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        fn(static_cast<Rank>((w << 6) + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Rank> members() const;

  // Raw word access for bulk bitset work (closures, table rows).
  std::size_t word_count() const { return words_.size(); }
  std::uint64_t word(std::size_t i) const { return words_[i]; }
  void or_word(std::size_t i, std::uint64_t bits) { words_[i] |= bits; }

  /// Lowercase hex, least-significant word first, zero padded to n!/4 digits.
  std::string to_hex() const;
  static PermSet from_hex(int n, const std::string& hex);

 private:
  void check_same_universe(const PermSet& other) const;

  int n_ = 0;
  std::uint64_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace permcorr
