#include "permcorr/permutation.hpp"

#include <array>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace permcorr {

namespace {

constexpr std::array<std::uint64_t, 21> kFactorial = [] {
  std::array<std::uint64_t, 21> f{};
  f[0] = 1;
  for (int i = 1; i <= 20; ++i) f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(i);
  return f;
}();

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in '" + text + "'");
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

// Fenwick tree over positions 1..n for order-statistic encode/decode.
class FenwickTree {
 public:
  explicit FenwickTree(int n) : n_(n), tree_(static_cast<std::size_t>(n) + 1, 0) {}

  void add(int i, int delta) {
    for (; i <= n_; i += i & -i) tree_[static_cast<std::size_t>(i)] += delta;
  }

  int prefix_sum(int i) const {
    int s = 0;
    for (; i > 0; i -= i & -i) s += tree_[static_cast<std::size_t>(i)];
    return s;
  }

  /// Smallest index p with prefix_sum(p) >= target; target >= 1.
  int select(int target) const {
    int pos = 0;
    int log = 1;
    while ((1 << log) <= n_) ++log;
    for (int step = 1 << (log - 1); step > 0; step >>= 1) {
      int next = pos + step;
      if (next <= n_ && tree_[static_cast<std::size_t>(next)] < target) {
        pos = next;
        target -= tree_[static_cast<std::size_t>(next)];
      }
    }
    return pos + 1;
  }

 private:
  int n_;
  std::vector<int> tree_;
};

}  // namespace

std::uint64_t factorial(int n) {
  if (n < 0 || n > kMaxPermN) throw std::invalid_argument("factorial: n out of [0,20]");
  return kFactorial[static_cast<std::size_t>(n)];
}

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  int n = static_cast<int>(values_.size());
  if (n < 1 || n > kMaxPermN) throw std::invalid_argument("permutation size out of [1,20]");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : values_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
      throw std::invalid_argument("not a permutation of 1.." + std::to_string(n));
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::reversed(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n - i;
  return Permutation(std::move(v));
}

Permutation Permutation::from_string(const std::string& text) {
  return Permutation(parse_int_list(text));
}

Permutation Permutation::unchecked(std::vector<int> values) {
  return Permutation(UncheckedTag{}, std::move(values));
}

int Permutation::pos(int value) const {
  if (value < 1 || value > n()) throw std::invalid_argument("pos: value out of range");
  for (int i = 0; i < n(); ++i)
    if (values_[static_cast<std::size_t>(i)] == value) return i + 1;
  return 0;  // unreachable for a valid permutation
}

std::vector<int> Permutation::inverse() const {
  std::vector<int> inv(values_.size());
  for (int i = 0; i < n(); ++i) inv[static_cast<std::size_t>(values_[static_cast<std::size_t>(i)] - 1)] = i + 1;
  return inv;
}

std::string Permutation::to_string() const {
  std::string s;
  for (int i = 0; i < n(); ++i) {
    if (i) s += ',';
    s += std::to_string(values_[static_cast<std::size_t>(i)]);
  }
  return s;
}

std::vector<ValuePair> inversions(const Permutation& a) {
  std::vector<int> inv = a.inverse();
  std::vector<ValuePair> out;
  int n = a.n();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (inv[static_cast<std::size_t>(i - 1)] > inv[static_cast<std::size_t>(j - 1)]) out.emplace_back(i, j);
  return out;
}

std::vector<ValuePair> adjacent_inversions(const Permutation& a) {
  std::vector<ValuePair> out;
  for (int p = 1; p < a.n(); ++p) {
    int x = a.at(p), y = a.at(p + 1);
    if (x > y) out.emplace_back(y, x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int inversion_count(const Permutation& a) {
  // Equals sum_k (k - f_k); computed directly from the code.
  const std::vector<int>& f = encode_lehmer(a).digits();
  int total = 0;
  for (int k = 1; k <= a.n(); ++k) total += k - f[static_cast<std::size_t>(k - 1)];
  return total;
}

LehmerCode::LehmerCode(std::vector<int> f) : f_(std::move(f)) {
  int n = static_cast<int>(f_.size());
  if (n < 1 || n > kMaxPermN) throw std::invalid_argument("Lehmer code size out of [1,20]");
  for (int k = 1; k <= n; ++k) {
    int v = f_[static_cast<std::size_t>(k - 1)];
    if (v < 1 || v > k) throw std::invalid_argument("Lehmer digit f_" + std::to_string(k) + " out of [1," + std::to_string(k) + "]");
  }
}

LehmerCode LehmerCode::from_string(const std::string& text) {
  return LehmerCode(parse_int_list(text));
}

std::string LehmerCode::to_string() const {
  std::string s;
  for (int i = 0; i < n(); ++i) {
    if (i) s += ',';
    s += std::to_string(f_[static_cast<std::size_t>(i)]);
  }
  return s;
}

LehmerCode encode_lehmer(const Permutation& a) {
  int n = a.n();
  std::vector<int> inv = a.inverse();
  std::vector<int> f(static_cast<std::size_t>(n));
  FenwickTree marked(n);
  for (int k = 1; k <= n; ++k) {
    int p = inv[static_cast<std::size_t>(k - 1)];
    marked.add(p, 1);
    f[static_cast<std::size_t>(k - 1)] = marked.prefix_sum(p);
  }
  return LehmerCode(std::move(f));
}

Permutation decode_lehmer(const LehmerCode& f) {
  // pos(k) is the f_k-th free slot, scanning values from n down to 1.
  int n = f.n();
  FenwickTree free_slots(n);
  for (int p = 1; p <= n; ++p) free_slots.add(p, 1);
  std::vector<int> values(static_cast<std::size_t>(n));
  for (int k = n; k >= 1; --k) {
    int p = free_slots.select(f.at(k));
    values[static_cast<std::size_t>(p - 1)] = k;
    free_slots.add(p, -1);
  }
  return Permutation::unchecked(std::move(values));
}

Rank rank_of(const Permutation& a) {
  const std::vector<int>& f = encode_lehmer(a).digits();
  Rank r = 0;
  for (int k = 1; k <= a.n(); ++k)
    r += static_cast<Rank>(k - f[static_cast<std::size_t>(k - 1)]) * factorial(k - 1);
  return r;
}

std::vector<int> rank_digits(Rank r, int n) {
  if (n < 1 || n > kMaxPermN) throw std::invalid_argument("rank_digits: n out of [1,20]");
  if (r >= factorial(n)) throw std::invalid_argument("rank out of [0, n!-1]");
  std::vector<int> d(static_cast<std::size_t>(n));
  for (int k = n; k >= 1; --k) {
    std::uint64_t base = factorial(k - 1);
    d[static_cast<std::size_t>(k - 1)] = static_cast<int>(r / base);
    r %= base;
  }
  return d;
}

Rank rank_from_digits(const std::vector<int>& digits) {
  Rank r = 0;
  for (int k = 1; k <= static_cast<int>(digits.size()); ++k)
    r += static_cast<Rank>(digits[static_cast<std::size_t>(k - 1)]) * factorial(k - 1);
  return r;
}

Permutation unrank(Rank r, int n) {
  std::vector<int> d = rank_digits(r, n);
  std::vector<int> f(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) f[static_cast<std::size_t>(k - 1)] = k - d[static_cast<std::size_t>(k - 1)];
  return decode_lehmer(LehmerCode(std::move(f)));
}

namespace {

Permutation combine_codes(const Permutation& a, const Permutation& b, bool take_max) {
  if (a.n() != b.n()) throw std::invalid_argument("grid join/meet: mismatched n");
  const std::vector<int>& fa = encode_lehmer(a).digits();
  const std::vector<int>& fb = encode_lehmer(b).digits();
  std::vector<int> f(fa.size());
  for (std::size_t k = 0; k < fa.size(); ++k)
    f[k] = take_max ? std::max(fa[k], fb[k]) : std::min(fa[k], fb[k]);
  return decode_lehmer(LehmerCode(std::move(f)));
}

}  // namespace

Permutation grid_join(const Permutation& a, const Permutation& b) { return combine_codes(a, b, true); }
Permutation grid_meet(const Permutation& a, const Permutation& b) { return combine_codes(a, b, false); }

int displacement(const Permutation& a, int value) { return std::abs(value - a.pos(value)); }

std::vector<int> displacement_list(const Permutation& a) {
  std::vector<int> inv = a.inverse();
  std::vector<int> d(inv.size());
  for (int i = 1; i <= a.n(); ++i) d[static_cast<std::size_t>(i - 1)] = std::abs(i - inv[static_cast<std::size_t>(i - 1)]);
  return d;
}

Permutation swap_values(const Permutation& a, int i, int j) {
  std::vector<int> v = a.values();
  int pi = a.pos(i), pj = a.pos(j);
  std::swap(v[static_cast<std::size_t>(pi - 1)], v[static_cast<std::size_t>(pj - 1)]);
  return Permutation::unchecked(std::move(v));
}

}  // namespace permcorr
