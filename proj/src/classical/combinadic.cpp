#include "ccx/classical.hpp"
#include "ccx/errors.hpp"

namespace ccx {

std::uint64_t binomial_coefficient(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) {
      throw InputError("C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t combinadic_rank(const BitString& x) {
  std::uint64_t rank = 0;
  int j = 0;
  for (int s = 0; s < static_cast<int>(x.size()); ++s) {
    if (!x[s]) continue;
    rank += binomial_coefficient(s, j + 1);
    ++j;
  }
  return rank;
}

BitString combinadic_unrank(std::uint64_t rank, int n, int a) {
  if (a < 0 || a > n) throw InputError("weight out of range for unrank");
  if (rank >= binomial_coefficient(n, a)) {
    throw InputError("rank " + std::to_string(rank) + " out of range for C(" + std::to_string(n) +
                     "," + std::to_string(a) + ")");
  }
  BitString x(n, 0);
  int s = n - 1;
  for (int j = a; j >= 1; --j) {
    while (binomial_coefficient(s, j) > rank) --s;
    x[s] = 1;
    rank -= binomial_coefficient(s, j);
    --s;
  }
  return x;
}

}  // namespace ccx
