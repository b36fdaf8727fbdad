#include <cmath>
#include <numeric>

#include "ccx/comm.hpp"
#include "ccx/errors.hpp"

namespace ccx {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

PublicRandomness::PublicRandomness(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

std::uint64_t PublicRandomness::next_u64() { return engine_(); }

std::uint64_t PublicRandomness::below(std::uint64_t bound) {
  if (bound == 0) throw InvariantError("below(0) has no values");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

double PublicRandomness::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

bool PublicRandomness::bernoulli(double p) { return uniform01() < p; }

std::vector<int> PublicRandomness::permutation(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

std::uint64_t PublicRandomness::binomial(std::uint64_t trials, double p) {
  return binomial_from_uniform(trials, p, uniform01());
}

std::uint64_t binomial_from_uniform(std::uint64_t trials, double p, double u) {
  if (p <= 0.0 || trials == 0) return 0;
  if (p >= 1.0) return trials;
  const double nn = static_cast<double>(trials);
  const auto mode = static_cast<std::uint64_t>(std::floor((nn + 1) * p)) > trials
                        ? trials
                        : static_cast<std::uint64_t>(std::floor((nn + 1) * p));
  const double md = static_cast<double>(mode);
  const double log_pmf = std::lgamma(nn + 1) - std::lgamma(md + 1) - std::lgamma(nn - md + 1) +
                         md * std::log(p) + (nn - md) * std::log1p(-p);
  const double odds = p / (1 - p);
  // Inversion over the support ordered mode, mode+1, mode-1, mode+2, ...
  double cum = std::exp(log_pmf);
  if (u < cum) return mode;
  double right_pmf = cum;
  double left_pmf = cum;
  std::uint64_t right = mode;
  std::uint64_t left = mode;
  bool right_open = mode < trials;
  bool left_open = mode > 0;
  while (right_open || left_open) {
    if (right_open) {
      right_pmf *= static_cast<double>(trials - right) / static_cast<double>(right + 1) * odds;
      ++right;
      cum += right_pmf;
      if (u < cum) return right;
      right_open = right < trials && right_pmf > 0;
    }
    if (left_open) {
      left_pmf *= static_cast<double>(left) / static_cast<double>(trials - left + 1) / odds;
      --left;
      cum += left_pmf;
      if (u < cum) return left;
      left_open = left > 0 && left_pmf > 0;
    }
  }
  return mode;
}

}  // namespace ccx
