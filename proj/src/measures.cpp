#include "permcorr/measures.hpp"

namespace permcorr {

int fixed_point_count(const Permutation& a) {
  int c = 0;
  for (int i = 1; i <= a.n(); ++i)
    if (a.at(i) == i) ++c;
  return c;
}

}  // namespace permcorr
