#pragma once

// Test-side statistics: chi-square tail and exact binomial tails.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ccx::oracle {

// Regularized lower incomplete gamma P(s, x).
inline double gamma_p(double s, double x) {
  if (x <= 0) return 0.0;
  if (x < s + 1) {
    double term = 1.0 / s;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
      term *= x / (s + k);
      sum += term;
      if (term < sum * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
  }
  // Continued fraction for Q, Lentz's method.
  double b = x + 1 - s;
  double c = 1e300;
  double d = 1 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - s);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1) < 1e-16) break;
  }
  return 1.0 - std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

// P(X >= stat) for X ~ chi-square with `dof` degrees of freedom.
inline double chi_square_sf(double stat, int dof) { return 1.0 - gamma_p(dof / 2.0, stat / 2.0); }

// Pearson statistic for counts against a uniform expectation.
inline double chi_square_uniform(const std::vector<long long>& counts) {
  long long total = 0;
  for (long long c : counts) total += c;
  const double expected = static_cast<double>(total) / counts.size();
  double stat = 0;
  for (long long c : counts) stat += (c - expected) * (c - expected) / expected;
  return stat;
}

inline double binomial_pmf(int m, int k, double p) {
  if (p <= 0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1) return k == m ? 1.0 : 0.0;
  return std::exp(std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) +
                  k * std::log(p) + (m - k) * std::log1p(-p));
}

// P(Bin(m, p) >= t).
inline double binomial_upper(int m, int t, double p) {
  double s = 0;
  for (int k = t < 0 ? 0 : t; k <= m; ++k) s += binomial_pmf(m, k, p);
  return s;
}

}  // namespace ccx::oracle
