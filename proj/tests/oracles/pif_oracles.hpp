#pragma once

// Independent re-implementations used only by tests. They avoid the library's
// shortcuts (consecutive-defined-point scans, sorted multisets) on purpose.

#include <algorithm>
#include <cstdint>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "ccx/pif.hpp"

namespace ccx::oracle {

// Joint type by direct counting over positions.
inline void joint_type(const BitString& x, const BitString& y, int& a, int& b, int& c) {
  a = b = c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    a += x[i] == 1;
    b += y[i] == 1;
    c += (x[i] == 1 && y[i] == 1);
  }
}

// All (c2, g2) with both endpoints defined, values differing and everything
// strictly between undefined; found by trying every pair of domain points.
inline std::vector<Jump> brute_jumps(const PIFunctionTable& f, int a, int b) {
  const int n = f.n();
  std::vector<Jump> out;
  const int lo = std::max(0, a + b - n);
  const int hi = std::min(a, b);
  for (int c2 = 0; c2 <= 2 * n; ++c2) {
    for (int g2 = 1; g2 <= 2 * n; ++g2) {
      if ((c2 + g2) % 2) continue;
      const int u = (c2 - g2) / 2;
      const int v = (c2 + g2) / 2;
      if (c2 - g2 < 0 || u < lo || v > hi) continue;
      Value fu = f.at(a, b, u);
      Value fv = f.at(a, b, v);
      if (fu == Value::kUndefined || fv == Value::kUndefined || fu == fv) continue;
      bool gap_clear = true;
      for (int w = u + 1; w < v; ++w) gap_clear = gap_clear && f.at(a, b, w) == Value::kUndefined;
      if (gap_clear) out.push_back({c2, g2});
    }
  }
  return out;
}

struct NaiveMeasure {
  // m^2 = num / den, with the lexicographically smallest maximizer.
  std::int64_t num = 0;
  std::int64_t den = 1;
  int a = -1, b = -1, c2 = -1, g2 = -1;
};

inline NaiveMeasure naive_measure(const PIFunctionTable& f) {
  NaiveMeasure best;
  const int n = f.n();
  for (int a = 1; a < n; ++a) {
    for (int b = 1; b < n; ++b) {
      for (const Jump& j : brute_jumps(f, a, b)) {
        // Two smallest of the four doubled cells via explicit removal.
        std::vector<int> cells = {2 * a - j.c2, j.c2, 2 * b - j.c2, 2 * (n - a - b) + j.c2};
        int i1 = 0;
        for (int i = 1; i < 4; ++i)
          if (cells[i] < cells[i1]) i1 = i;
        int n1 = cells[i1];
        cells.erase(cells.begin() + i1);
        int n2 = cells[0];
        for (int v : cells) n2 = std::min(n2, v);
        std::int64_t num = static_cast<std::int64_t>(n1) * n2;
        std::int64_t den = static_cast<std::int64_t>(j.g2) * j.g2;
        bool better = best.a < 0 || num * best.den > best.num * den;
        bool tie = best.a >= 0 && num * best.den == best.num * den;
        if (tie) {
          auto cand = std::tie(a, b, j.c2, j.g2);
          auto cur = std::tie(best.a, best.b, best.c2, best.g2);
          better = cand < cur;
        }
        if (better) best = {num, den, a, b, j.c2, j.g2};
      }
    }
  }
  return best;
}

// Random table: each achievable cell is -1, +1 or (when partial) undefined.
inline PIFunctionTable random_table(int n, std::mt19937_64& rng, double undefined_rate) {
  PIFunctionTable f(n, "random");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = std::max(0, a + b - n); c <= std::min(a, b); ++c) {
        double r = u(rng);
        Value v = r < undefined_rate ? Value::kUndefined
                  : r < (1.0 + undefined_rate) / 2 ? Value::kMinus
                                                     : Value::kPlus;
        f.set(a, b, c, v);
      }
  return f;
}

// Random total table whose slices have few flips, so rank-based tests see
// structured matrices rather than noise.
inline PIFunctionTable random_total_table(int n, std::mt19937_64& rng) {
  PIFunctionTable f(n, "random-total");
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> flips(0, 3);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      const int lo = std::max(0, a + b - n);
      const int hi = std::min(a, b);
      Value v = coin(rng) ? Value::kPlus : Value::kMinus;
      std::vector<int> cuts;
      int k = flips(rng);
      for (int i = 0; i < k && hi > lo; ++i) {
        cuts.push_back(std::uniform_int_distribution<int>(lo + 1, hi)(rng));
      }
      for (int c = lo; c <= hi; ++c) {
        for (int cut : cuts)
          if (cut == c) v = negate(v);
        f.set(a, b, c, v);
      }
    }
  return f;
}

inline BitString random_bits(int n, std::mt19937_64& rng) {
  BitString x(n);
  for (auto& bit : x) bit = static_cast<std::uint8_t>(rng() & 1U);
  return x;
}

inline BitString random_weight(int n, int w, std::mt19937_64& rng) {
  BitString x(n, 0);
  for (int i = 0; i < w; ++i) x[i] = 1;
  std::shuffle(x.begin(), x.end(), rng);
  return x;
}

// Pair with prescribed joint type, positions shuffled.
inline std::pair<BitString, BitString> random_pair(int n, int a, int b, int k, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  BitString x(n, 0), y(n, 0);
  for (int i = 0; i < k; ++i) x[perm[i]] = y[perm[i]] = 1;
  for (int i = k; i < a; ++i) x[perm[i]] = 1;
  for (int i = a; i < a + b - k; ++i) y[perm[i]] = 1;
  return {x, y};
}

}  // namespace ccx::oracle
