#include <cmath>
#include <cstdlib>

#include "ccx/bounds.hpp"
#include "ccx/errors.hpp"

namespace ccx {

PaturiResult paturi_gamma(const std::vector<Value>& predicate) {
  const int n = static_cast<int>(predicate.size()) - 1;
  if (n < 1) throw NoTransition("predicate needs at least two points");
  std::optional<PaturiResult> best;
  for (int k = 0; k + 1 <= n; ++k) {
    const Value lo = predicate[k];
    const Value hi = predicate[k + 1];
    if (!defined(lo) || !defined(hi) || lo == hi) continue;
    const int gamma = std::abs(2 * k - n + 1);
    if (!best || gamma < best->gamma) best = PaturiResult{gamma, k, 0.0};
  }
  if (!best) throw NoTransition("predicate has no defined transition");
  best->adeg_value = std::sqrt(static_cast<double>(n) * (n - best->gamma));
  return *best;
}

std::vector<Value> fkl_slice(int k, int l2) {
  if (k < 1) throw InputError("f_{k,l} needs k >= 1");
  if (l2 <= 0 || l2 % 2 == 0 || l2 > k) {
    throw InputError("f_{k,l} needs a half-integer l with 0 < l <= k/2, got k=" + std::to_string(k) +
                     ", 2l=" + std::to_string(l2));
  }
  std::vector<Value> d(k + 1, Value::kUndefined);
  d[(l2 - 1) / 2] = Value::kMinus;
  d[(l2 + 1) / 2] = Value::kPlus;
  return d;
}

}  // namespace ccx
