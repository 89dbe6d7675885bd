#include "permcorr/orders.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace permcorr {

OrderKind OrderKind::t_limited(int t) {
  if (t < 1) throw std::invalid_argument("t_limited: t must be >= 1");
  return {Tag::t_limited, t};
}

std::string OrderKind::name() const {
  switch (tag) {
    case Tag::strong: return "strong";
    case Tag::weak: return "weak";
    case Tag::grid: return "grid";
    case Tag::t_limited: return "t:" + std::to_string(t);
  }
  return "?";
}

OrderKind OrderKind::parse(const std::string& s) {
  if (s == "strong") return strong();
  if (s == "weak") return weak();
  if (s == "grid") return grid();
  if (s.rfind("t:", 0) == 0) return t_limited(std::stoi(s.substr(2)));
  throw std::invalid_argument("unknown order '" + s + "'");
}

std::vector<ValuePair> dominated_inversions(const Permutation& a) {
  std::vector<ValuePair> out;
  int n = a.n();
  for (int k = 1; k <= n; ++k) {
    int big = a.at(k);
    for (int l = k + 1; l <= n; ++l) {
      int small = a.at(l);
      if (small > big) continue;  // not an inversion of {small, big}
      bool dominated = true;
      for (int m = k + 1; m < l; ++m)
        if (a.at(m) < big) { dominated = false; break; }
      if (dominated) out.emplace_back(small, big);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Permutation> up_moves(const Permutation& a, OrderKind kind) {
  std::vector<Permutation> out;
  int n = a.n();
  switch (kind.tag) {
    case OrderKind::Tag::strong:
    case OrderKind::Tag::weak:
    case OrderKind::Tag::t_limited: {
      int max_dist = kind.tag == OrderKind::Tag::strong ? n
                   : kind.tag == OrderKind::Tag::weak   ? 1
                                                        : kind.t;
      for (int k = 1; k <= n; ++k) {
        for (int l = k + 1; l <= n && l - k <= max_dist; ++l) {
          if (a.at(k) > a.at(l)) out.push_back(swap_values(a, a.at(k), a.at(l)));
        }
      }
      break;
    }
    case OrderKind::Tag::grid: {
      for (const auto& [i, j] : dominated_inversions(a)) out.push_back(swap_values(a, i, j));
      break;
    }
  }
  return out;
}

namespace {

// leq criteria, all in this library's orientation (identity on top).

bool leq_weak_criterion(const Permutation& a, const Permutation& b) {
  // a <=_w b iff inv(b) is contained in inv(a).
  std::vector<int> pa = a.inverse(), pb = b.inverse();
  int n = a.n();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      bool inv_b = pb[static_cast<std::size_t>(i - 1)] > pb[static_cast<std::size_t>(j - 1)];
      if (!inv_b) continue;
      bool inv_a = pa[static_cast<std::size_t>(i - 1)] > pa[static_cast<std::size_t>(j - 1)];
      if (!inv_a) return false;
    }
  return true;
}

bool leq_grid_criterion(const Permutation& a, const Permutation& b) {
  const std::vector<int>& fa = encode_lehmer(a).digits();
  const std::vector<int>& fb = encode_lehmer(b).digits();
  for (std::size_t k = 0; k < fa.size(); ++k)
    if (fa[k] > fb[k]) return false;
  return true;
}

bool leq_strong_criterion(const Permutation& a, const Permutation& b) {
  // Sorted-prefix dominance, mirrored for the identity-on-top orientation:
  // a <=_s b iff for every prefix length the sorted prefix of b is
  // elementwise <= the sorted prefix of a.
  int n = a.n();
  std::vector<int> pa, pb;
  pa.reserve(static_cast<std::size_t>(n));
  pb.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    pa.insert(std::upper_bound(pa.begin(), pa.end(), a.at(k)), a.at(k));
    pb.insert(std::upper_bound(pb.begin(), pb.end(), b.at(k)), b.at(k));
    for (int i = 0; i < k; ++i)
      if (pb[static_cast<std::size_t>(i)] > pa[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

}  // namespace

Order::Order(int n, OrderKind kind) : n_(n), kind_(kind) {
  if (n < 1 || n > kMaxPermSetN) throw std::invalid_argument("Order: n out of [1,12]");
  if (kind.tag == OrderKind::Tag::t_limited && kind.t > n)
    throw std::invalid_argument("Order: t exceeds n");
  if (n > kMaxOrderGraphN) return;

  std::uint64_t nf = factorial(n);
  inv_count_.resize(nf);
  move_offsets_.assign(nf + 1, 0);
  std::vector<std::vector<std::uint32_t>> adj(nf);
  std::uint64_t total = 0;
  for (Rank r = 0; r < nf; ++r) {
    Permutation a = unrank(r, n);
    inv_count_[r] = static_cast<std::uint16_t>(inversion_count(a));
    for (const Permutation& b : up_moves(a, kind)) adj[r].push_back(static_cast<std::uint32_t>(rank_of(b)));
    std::sort(adj[r].begin(), adj[r].end());
    total += adj[r].size();
  }
  move_targets_.reserve(total);
  for (Rank r = 0; r < nf; ++r) {
    move_offsets_[r] = static_cast<std::uint32_t>(move_targets_.size());
    move_targets_.insert(move_targets_.end(), adj[r].begin(), adj[r].end());
  }
  move_offsets_[nf] = static_cast<std::uint32_t>(move_targets_.size());
  has_graph_ = true;

  if (n > kMaxPrincipalTableN) return;
  // principal_up_set(r) = {r} union of principal sets of its move targets;
  // fill in increasing inversion count so targets are ready first.
  principal_stride_ = (nf + 63) / 64;
  principal_words_.assign(nf * principal_stride_, 0);
  std::vector<Rank> by_height(nf);
  std::iota(by_height.begin(), by_height.end(), Rank{0});
  std::sort(by_height.begin(), by_height.end(),
            [&](Rank x, Rank y) { return inv_count_[x] != inv_count_[y] ? inv_count_[x] < inv_count_[y] : x < y; });
  for (Rank r : by_height) {
    std::uint64_t* row = principal_words_.data() + r * principal_stride_;
    row[r >> 6] |= std::uint64_t{1} << (r & 63);
    for (std::uint32_t idx = move_offsets_[r]; idx < move_offsets_[r + 1]; ++idx) {
      const std::uint64_t* src = principal_words_.data() + static_cast<std::uint64_t>(move_targets_[idx]) * principal_stride_;
      for (std::size_t w = 0; w < principal_stride_; ++w) row[w] |= src[w];
    }
  }
  has_principal_ = true;
}

void Order::require_graph(const char* what) const {
  if (!has_graph_)
    throw std::domain_error(std::string(what) + ": needs the move graph (n <= " + std::to_string(kMaxOrderGraphN) + ")");
}

std::vector<Rank> Order::move_ranks(Rank r) const {
  if (has_graph_) {
    std::vector<Rank> out;
    for (std::uint32_t idx = move_offsets_[r]; idx < move_offsets_[r + 1]; ++idx) out.push_back(move_targets_[idx]);
    return out;
  }
  std::vector<Rank> out;
  for (const Permutation& b : up_moves(unrank(r, n_), kind_)) out.push_back(rank_of(b));
  std::sort(out.begin(), out.end());
  return out;
}

bool Order::leq(const Permutation& a, const Permutation& b) const {
  if (a.n() != n_ || b.n() != n_) throw std::invalid_argument("leq: mismatched n");
  switch (kind_.tag) {
    case OrderKind::Tag::strong: return leq_strong_criterion(a, b);
    case OrderKind::Tag::weak: return leq_weak_criterion(a, b);
    case OrderKind::Tag::grid: return leq_grid_criterion(a, b);
    case OrderKind::Tag::t_limited: return leq_by_search(a, b);
  }
  return false;
}

bool Order::leq_by_search(const Permutation& a, const Permutation& b) const {
  if (a.n() != n_ || b.n() != n_) throw std::invalid_argument("leq_by_search: mismatched n");
  Rank target = rank_of(b);
  if (has_principal_) {
    const std::uint64_t* row = principal_words_.data() + rank_of(a) * principal_stride_;
    return (row[target >> 6] >> (target & 63)) & 1;
  }
  require_graph("leq_by_search");
  // BFS upward from a; prune by inversion count.
  if (inv_count_[rank_of(a)] < inv_count_[target]) return false;
  PermSet seen(n_);
  std::deque<Rank> queue;
  Rank start = rank_of(a);
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    Rank r = queue.front();
    queue.pop_front();
    if (r == target) return true;
    for (std::uint32_t idx = move_offsets_[r]; idx < move_offsets_[r + 1]; ++idx) {
      Rank next = move_targets_[idx];
      if (!seen.contains(next)) {
        seen.insert(next);
        queue.push_back(next);
      }
    }
  }
  return false;
}

bool Order::is_up_set(const PermSet& s) const {
  if (s.n() != n_) throw std::invalid_argument("is_up_set: mismatched n");
  bool ok = true;
  if (has_graph_) {
    s.for_each([&](Rank r) {
      if (!ok) return;
      for (std::uint32_t idx = move_offsets_[r]; idx < move_offsets_[r + 1]; ++idx)
        if (!s.contains(move_targets_[idx])) { ok = false; return; }
    });
    return ok;
  }
  s.for_each([&](Rank r) {
    if (!ok) return;
    for (const Permutation& b : up_moves(unrank(r, n_), kind_))
      if (!s.contains(rank_of(b))) { ok = false; return; }
  });
  return ok;
}

PermSet Order::up_closure(const PermSet& s) const {
  if (s.n() != n_) throw std::invalid_argument("up_closure: mismatched n");
  if (has_principal_) {
    PermSet out(n_);
    s.for_each([&](Rank r) {
      const std::uint64_t* row = principal_words_.data() + r * principal_stride_;
      for (std::size_t w = 0; w < principal_stride_; ++w) out.or_word(w, row[w]);
    });
    return out;
  }
  PermSet out = s;
  std::deque<Rank> queue;
  s.for_each([&](Rank r) { queue.push_back(r); });
  while (!queue.empty()) {
    Rank r = queue.front();
    queue.pop_front();
    for (Rank next : move_ranks(r)) {
      if (!out.contains(next)) {
        out.insert(next);
        queue.push_back(next);
      }
    }
  }
  return out;
}

PermSet Order::principal_up_set(Rank r) const {
  PermSet s(n_);
  s.insert(r);
  return up_closure(s);
}

bool Order::enumerate_up_sets(std::uint64_t limit, const std::function<bool(const PermSet&)>& fn) const {
  require_graph("enumerate_up_sets");
  std::uint64_t nf = factorial(n_);
  std::vector<Rank> by_height(nf);
  std::iota(by_height.begin(), by_height.end(), Rank{0});
  std::sort(by_height.begin(), by_height.end(),
            [&](Rank x, Rank y) { return inv_count_[x] != inv_count_[y] ? inv_count_[x] < inv_count_[y] : x < y; });

  PermSet current(n_);
  std::uint64_t emitted = 0;
  bool stop = false;

  // Element r may join only if all of its up-moves are already in; they sit
  // strictly earlier in by_height, so each up-set is produced exactly once.
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (stop) return;
    if (idx == by_height.size()) {
      if (emitted == limit) { stop = true; return; }
      ++emitted;
      if (!fn(current)) stop = true;
      return;
    }
    Rank r = by_height[idx];
    self(self, idx + 1);  // r stays out
    if (stop) return;
    for (std::uint32_t i = move_offsets_[r]; i < move_offsets_[r + 1]; ++i)
      if (!current.contains(move_targets_[i])) return;
    current.insert(r);
    self(self, idx + 1);
    current.remove(r);
  };
  rec(rec, 0);
  return !stop;
}

std::vector<PermSet> Order::all_up_sets(std::uint64_t limit, bool* truncated) const {
  std::vector<PermSet> out;
  bool complete = enumerate_up_sets(limit, [&](const PermSet& s) {
    out.push_back(s);
    return true;
  });
  if (truncated) *truncated = !complete;
  return out;
}

PermSet Order::random_up_set(double seed_density, Rng& rng) const {
  if (seed_density < 0.0 || seed_density > 1.0) throw std::invalid_argument("seed_density out of [0,1]");
  PermSet seed(n_);
  std::uint64_t nf = factorial(n_);
  for (Rank r = 0; r < nf; ++r)
    if (rng.bernoulli(seed_density)) seed.insert(r);
  return up_closure(seed);
}

PermSet slice(const PermSet& a, int k) {
  int n = a.n();
  if (n < 2) throw std::invalid_argument("slice: n must be >= 2");
  if (k < 1 || k > n) throw std::invalid_argument("slice: k out of [1,n]");
  PermSet out(n - 1);
  a.for_each([&](Rank r) {
    Permutation p = unrank(r, n);
    if (p.pos(n) != k) return;
    std::vector<int> reduced;
    reduced.reserve(static_cast<std::size_t>(n - 1));
    for (int v : p.values())
      if (v != n) reduced.push_back(v);
    out.insert(Permutation::unchecked(std::move(reduced)));
  });
  return out;
}

}  // namespace permcorr
