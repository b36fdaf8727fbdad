#pragma once

// Instance generators shared by the protocol tests.

#include "ccx/harness.hpp"
#include "ccx/pif.hpp"

namespace ccx::oracle {

// A pair with |x| = a, |y| = b, |x∧y| = k at uniformly permuted positions.
inline BitPair planted_pair(int n, int a, int b, int k, PublicRandomness& rng) {
  const std::vector<int> perm = rng.permutation(n);
  BitPair out{BitString(n, 0), BitString(n, 0)};
  for (int i = 0; i < k; ++i) out.x[perm[i]] = out.y[perm[i]] = 1;
  for (int i = k; i < a; ++i) out.x[perm[i]] = 1;
  for (int i = a; i < a + b - k; ++i) out.y[perm[i]] = 1;
  return out;
}

// Even trials sit at |x∧y| = c-g, odd trials at c+g.
inline InstanceGenerator setinc_endpoints(const SetIncParams& p) {
  const SetIncParams q = to_intersection_form(p);
  return [q](PublicRandomness& rng, std::uint64_t index) {
    const int k = index % 2 == 0 ? (q.c2 - q.g2) / 2 : (q.c2 + q.g2) / 2;
    BitPair pr = planted_pair(q.n, q.a, q.b, k, rng);
    return TrialInstance{pr.x, pr.y, to_int(setinc_value(q, k))};
  };
}

// Uniform over defined joint types of f, then a planted pair.
inline InstanceGenerator defined_inputs(const PIFunctionTable& f) {
  std::vector<std::array<int, 3>> cells;
  const int n = f.n();
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = domain_lo(n, a, b); c <= domain_hi(a, b); ++c)
        if (defined(f.at(a, b, c))) cells.push_back({a, b, c});
  return [f, cells](PublicRandomness& rng, std::uint64_t) {
    const auto& t = cells[rng.below(cells.size())];
    BitPair pr = planted_pair(f.n(), t[0], t[1], t[2], rng);
    return TrialInstance{pr.x, pr.y, to_int(f.at(t[0], t[1], t[2]))};
  };
}

}  // namespace ccx::oracle
