#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "permcorr/permset.hpp"
#include "permcorr/permutation.hpp"
#include "permcorr/rng.hpp"

namespace permcorr {

// Orientation reminder: in every order here the identity is the unique top
// element and a swap that sorts an inversion moves UP. Strong admits any
// inversion swap, weak only adjacent ones, t_limited(t) swaps at position
// distance <= t (t=1 gives weak, t=n gives strong), and grid is the
// componentwise order on Lehmer codes (single steps = dominated inversions).
struct OrderKind {
  enum class Tag { strong, weak, grid, t_limited };

  Tag tag = Tag::strong;
  int t = 0;  // t_limited only

  static OrderKind strong() { return {Tag::strong, 0}; }
  static OrderKind weak() { return {Tag::weak, 0}; }
  static OrderKind grid() { return {Tag::grid, 0}; }
  static OrderKind t_limited(int t);

  std::string name() const;                       // "strong" | "weak" | "grid" | "t:K"
  static OrderKind parse(const std::string& s);   // inverse of name()

  bool operator==(const OrderKind&) const = default;
};

/// Inversions {i,j} whose strictly intermediate entries all exceed j; swapping
/// one is exactly a covering step of the grid order.
std::vector<ValuePair> dominated_inversions(const Permutation& a);

/// All permutations one permitted swap above a. Every result has strictly
/// fewer inversions than a.
std::vector<Permutation> up_moves(const Permutation& a, OrderKind kind);

// Set-level caps. The move graph is materialized up to 8! nodes; full
// principal-up-set tables up to 7!. Beyond the graph cap, closures fall back
// to on-the-fly search (correct but slow) up to the PermSet cap.
inline constexpr int kMaxOrderGraphN = 8;
inline constexpr int kMaxPrincipalTableN = 7;

// One order on one S_n, with whatever acceleration tables fit. Immutable
// after construction; all queries are const and thread-safe.
class Order {
 public:
  Order(int n, OrderKind kind);

  int n() const { return n_; }
  OrderKind kind() const { return kind_; }

  /// Partial-order comparison. Strong/weak/grid use closed-form criteria
  /// (each one equivalence-tested against search); t_limited searches.
  bool leq(const Permutation& a, const Permutation& b) const;

  /// Reachability over up_moves; the ground-truth oracle. Needs the graph.
  bool leq_by_search(const Permutation& a, const Permutation& b) const;

  bool is_up_set(const PermSet& s) const;

  /// Smallest up-set containing s.
  PermSet up_closure(const PermSet& s) const;

  PermSet principal_up_set(Rank r) const;

  /// Emits every up-set exactly once (DFS over antichain choices); fn returns
  /// false to stop early. Returns true iff enumeration completed within limit.
  bool enumerate_up_sets(std::uint64_t limit, const std::function<bool(const PermSet&)>& fn) const;

  std::vector<PermSet> all_up_sets(std::uint64_t limit, bool* truncated = nullptr) const;

  /// Up-closure of a Bernoulli(seed_density) random subset.
  PermSet random_up_set(double seed_density, Rng& rng) const;

  /// Up-move targets of a rank (from the graph when present).
  std::vector<Rank> move_ranks(Rank r) const;

  bool has_graph() const { return has_graph_; }

 private:
  void require_graph(const char* what) const;

  int n_;
  OrderKind kind_;
  bool has_graph_ = false;
  bool has_principal_ = false;
  // CSR move graph over ranks (n <= kMaxOrderGraphN).
  std::vector<std::uint32_t> move_offsets_;
  std::vector<std::uint32_t> move_targets_;
  std::vector<std::uint16_t> inv_count_;             // per rank
  std::vector<std::uint64_t> principal_words_;       // n <= kMaxPrincipalTableN, row-major bitsets
  std::size_t principal_stride_ = 0;
};

/// Slice A_k: members with pos(a,n) = k, with the value n deleted; a family
/// over S_{n-1}. Sizes satisfy sum_k |A_k| = |A|.
PermSet slice(const PermSet& a, int k);

}  // namespace permcorr
