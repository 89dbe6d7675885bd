#include "permcorr/permset.hpp"

#include <stdexcept>

namespace permcorr {

PermSet::PermSet(int n) : n_(n) {
  if (n < 1 || n > kMaxPermSetN) throw std::invalid_argument("PermSet: n out of [1,12]");
  universe_ = factorial(n);
  words_.assign((universe_ + 63) / 64, 0);
}

PermSet PermSet::full(int n) {
  PermSet s(n);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  int tail = static_cast<int>(s.universe_ & 63);
  if (tail) s.words_.back() = (std::uint64_t{1} << tail) - 1;
  return s;
}

PermSet PermSet::singleton(const Permutation& a) {
  PermSet s(a.n());
  s.insert(a);
  return s;
}

std::uint64_t PermSet::size() const {
  std::uint64_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

bool PermSet::empty() const {
  for (std::uint64_t w : words_)
    if (w) return false;
  return true;
}

void PermSet::check_same_universe(const PermSet& other) const {
  if (n_ != other.n_) throw std::invalid_argument("PermSet: mismatched n");
}

PermSet& PermSet::operator&=(const PermSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

PermSet& PermSet::operator|=(const PermSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

PermSet& PermSet::operator-=(const PermSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

PermSet PermSet::complement() const { return full(n_) -= *this; }

bool PermSet::is_subset_of(const PermSet& other) const {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::uint64_t PermSet::intersection_size(const PermSet& other) const {
  check_same_universe(other);
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    c += static_cast<std::uint64_t>(std::popcount(words_[i] & other.words_[i]));
  return c;
}

std::vector<Rank> PermSet::members() const {
  std::vector<Rank> out;
  out.reserve(size());
  for_each([&](Rank r) { out.push_back(r); });
  return out;
}

std::string PermSet::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::uint64_t nibbles = (universe_ + 3) / 4;
  std::string s;
  s.reserve(nibbles);
  for (std::uint64_t i = 0; i < nibbles; ++i) {
    std::uint64_t bit = i * 4;
    unsigned v = static_cast<unsigned>((words_[bit >> 6] >> (bit & 63)) & 0xF);
    s += digits[v];
  }
  return s;
}

PermSet PermSet::from_hex(int n, const std::string& hex) {
  PermSet s(n);
  std::uint64_t nibbles = (s.universe_ + 3) / 4;
  if (hex.size() != nibbles) throw std::invalid_argument("PermSet hex: wrong length");
  for (std::uint64_t i = 0; i < nibbles; ++i) {
    char c = hex[i];
    unsigned v;
    if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
    else throw std::invalid_argument("PermSet hex: bad digit");
    std::uint64_t bit = i * 4;
    s.words_[bit >> 6] |= static_cast<std::uint64_t>(v) << (bit & 63);
  }
  std::uint64_t tail_bits = s.universe_ & 63;
  if (tail_bits && (s.words_.back() >> tail_bits))
    throw std::invalid_argument("PermSet hex: bits beyond n!");
  return s;
}

}  // namespace permcorr
