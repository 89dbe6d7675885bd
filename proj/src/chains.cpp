#include "permcorr/chains.hpp"

#include <bit>
#include <stdexcept>

namespace permcorr {

SetFamily::SetFamily(int n) : n_(n) {
  if (n < 1 || n > kMaxSetFamilyN) throw std::invalid_argument("SetFamily: n out of [1,20]");
  words_.assign((universe_size() + 63) / 64, 0);
}

SetFamily SetFamily::full(int n) {
  SetFamily f(n);
  for (auto& w : f.words_) w = ~std::uint64_t{0};
  std::uint64_t tail = f.universe_size() & 63;
  if (tail) f.words_.back() = (std::uint64_t{1} << tail) - 1;
  return f;
}

std::uint64_t SetFamily::size() const {
  std::uint64_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

bool is_left_compressed(const SetFamily& fam) {
  int n = fam.n();
  bool ok = true;
  fam.for_each([&](SubsetMask m) {
    if (!ok) return;
    for (int i = 1; i <= n && ok; ++i) {
      if (m & (SubsetMask{1} << (i - 1))) continue;
      for (int j = i + 1; j <= n; ++j) {
        SubsetMask jbit = SubsetMask{1} << (j - 1);
        if (!(m & jbit)) continue;
        SubsetMask shifted = (m & ~jbit) | (SubsetMask{1} << (i - 1));
        if (!fam.contains(shifted)) { ok = false; break; }
      }
    }
  });
  return ok;
}

SetFamily left_compress(const SetFamily& fam) {
  SetFamily out = fam;
  int n = fam.n();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        SubsetMask ibit = SubsetMask{1} << (i - 1);
        SubsetMask jbit = SubsetMask{1} << (j - 1);
        // standard C_ij shift, applied simultaneously: move j to i wherever
        // the image was vacant (the shift map is injective, and no image can
        // collide with a source, so collect-then-apply is safe)
        std::vector<SubsetMask> to_move;
        out.for_each([&](SubsetMask m) {
          if ((m & jbit) && !(m & ibit)) {
            SubsetMask shifted = (m & ~jbit) | ibit;
            if (!out.contains(shifted)) to_move.push_back(m);
          }
        });
        for (SubsetMask m : to_move) {
          out.remove(m);
          out.insert((m & ~jbit) | ibit);
          changed = true;
        }
      }
    }
  }
  return out;
}

std::vector<SubsetMask> chain_of_perm(const Permutation& a) {
  std::vector<SubsetMask> chain;
  chain.reserve(static_cast<std::size_t>(a.n()) + 1);
  SubsetMask m = 0;
  chain.push_back(m);
  for (int p = 1; p <= a.n(); ++p) {
    m |= SubsetMask{1} << (a.at(p) - 1);
    chain.push_back(m);
  }
  return chain;
}

namespace {

void check_chain_enum(int n) {
  if (n > kMaxChainEnumN)
    throw std::invalid_argument("chain enumeration capped at n = " + std::to_string(kMaxChainEnumN));
}

bool chain_meets(const SetFamily& fam, const std::vector<int>& values) {
  SubsetMask m = 0;
  if (fam.contains(m)) return true;
  for (int v : values) {
    m |= SubsetMask{1} << (v - 1);
    if (fam.contains(m)) return true;
  }
  return false;
}

}  // namespace

std::uint64_t chain_count(const SetFamily& fam) {
  check_chain_enum(fam.n());
  std::uint64_t c = 0;
  for_each_permutation(fam.n(), [&](const std::vector<int>& values) {
    if (chain_meets(fam, values)) ++c;
  });
  return c;
}

std::uint64_t chain_count2(const SetFamily& a, const SetFamily& b) {
  if (a.n() != b.n()) throw std::invalid_argument("chain_count2: mismatched n");
  check_chain_enum(a.n());
  std::uint64_t c = 0;
  for_each_permutation(a.n(), [&](const std::vector<int>& values) {
    if (chain_meets(a, values) && chain_meets(b, values)) ++c;
  });
  return c;
}

PermSet chain_up_set(const SetFamily& fam) {
  PermSet out(fam.n());
  std::uint64_t nf = factorial(fam.n());
  for (Rank r = 0; r < nf; ++r) {
    Permutation a = unrank(r, fam.n());
    if (chain_meets(fam, a.values())) out.insert(r);
  }
  return out;
}

int chain_stat(const SetFamily& fam, const Permutation& a) {
  if (fam.n() != a.n()) throw std::invalid_argument("chain_stat: mismatched n");
  int c = 0;
  for (SubsetMask m : chain_of_perm(a))
    if (fam.contains(m)) ++c;
  return c;
}

JointTailReport joint_tail_check(const SetFamily& a, const SetFamily& b, int k, int l) {
  if (a.n() != b.n()) throw std::invalid_argument("joint_tail_check: mismatched n");
  check_chain_enum(a.n());
  std::uint64_t hits_a = 0, hits_b = 0, hits_both = 0, total = 0;
  for_each_permutation(a.n(), [&](const std::vector<int>& values) {
    ++total;
    SubsetMask m = 0;
    int na = a.contains(m) ? 1 : 0;
    int nb = b.contains(m) ? 1 : 0;
    for (int v : values) {
      m |= SubsetMask{1} << (v - 1);
      if (a.contains(m)) ++na;
      if (b.contains(m)) ++nb;
    }
    bool ta = na >= k, tb = nb >= l;
    if (ta) ++hits_a;
    if (tb) ++hits_b;
    if (ta && tb) ++hits_both;
  });
  JointTailReport report;
  report.p_a = Rational(hits_a, total);
  report.p_b = Rational(hits_b, total);
  report.p_joint = Rational(hits_both, total);
  report.slack = report.p_joint - report.p_a * report.p_b;
  report.holds = report.slack >= 0;
  report.inputs_compressed = is_left_compressed(a) && is_left_compressed(b);
  return report;
}

SetFamily random_set_family(int n, double density, Rng& rng) {
  if (density < 0.0 || density > 1.0) throw std::invalid_argument("density out of [0,1]");
  SetFamily f(n);
  std::uint64_t u = f.universe_size();
  for (std::uint64_t m = 0; m < u; ++m)
    if (rng.bernoulli(density)) f.insert(static_cast<SubsetMask>(m));
  return f;
}

}  // namespace permcorr
