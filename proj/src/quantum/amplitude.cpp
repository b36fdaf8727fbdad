#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "ccx/errors.hpp"
#include "ccx/quantum.hpp"

namespace ccx {

namespace {

void check_precision(int t, int cap) {
  if (t < 1 || t > cap) {
    throw InputError("precision qubits t must lie in [1, " + std::to_string(cap) + "], got " +
                     std::to_string(t));
  }
}

// Fejér kernel sin^2(pi d) / (M^2 sin^2(pi d / M)), with d reduced mod M.
double fejer(double d, double m) {
  d = std::remainder(d, m);
  if (d == 0.0) return 1.0;
  const double r = std::sin(std::numbers::pi * d) / (m * std::sin(std::numbers::pi * d / m));
  return r * r;
}

using Mat2 = std::array<double, 4>;  // row-major

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

}  // namespace

double grover_angle(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability must lie in [0, 1]");
  return std::asin(std::sqrt(p));
}

double ae_value(int y, int t) {
  const double s = std::sin(std::numbers::pi * y / static_cast<double>(1 << t));
  return s * s;
}

std::vector<double> ae_outcome_distribution(double p, int t) {
  check_precision(t, kMaxPrecisionQubits);
  const double omega = grover_angle(p) / std::numbers::pi;
  const int m = 1 << t;
  std::vector<double> out(m);
  for (int y = 0; y < m; ++y) {
    out[y] = 0.5 * fejer(omega * m - y, m) + 0.5 * fejer((1.0 - omega) * m - y, m);
  }
  return out;
}

std::vector<double> ae_statevector_oracle(double p, int t) {
  check_precision(t, kMaxOracleQubits);
  const double theta = grover_angle(p);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  // Basis (good, bad); |psi> = sin θ |good> + cos θ |bad>.
  const Mat2 reflect_psi{2 * s * s - 1, 2 * s * c, 2 * s * c, 2 * c * c - 1};
  const Mat2 flip_good{-1, 0, 0, 1};
  const Mat2 q = mul(reflect_psi, flip_good);

  const int m = 1 << t;
  using cd = std::complex<double>;
  std::vector<std::array<cd, 2>> state(m);
  const double amp = 1.0 / std::sqrt(static_cast<double>(m));
  for (auto& v : state) v = {cd(amp * s), cd(amp * c)};

  Mat2 power = q;
  for (int j = 0; j < t; ++j) {
    for (int x = 0; x < m; ++x) {
      if (!((x >> j) & 1)) continue;
      const cd g = state[x][0];
      const cd b = state[x][1];
      state[x] = {power[0] * g + power[1] * b, power[2] * g + power[3] * b};
    }
    power = mul(power, power);
  }

  std::vector<double> out(m);
  for (int y = 0; y < m; ++y) {
    cd g = 0;
    cd b = 0;
    for (int x = 0; x < m; ++x) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(x) * y) % m) / m;
      const cd w = std::polar(amp, phase);
      g += w * state[x][0];
      b += w * state[x][1];
    }
    out[y] = std::norm(g) + std::norm(b);
  }
  return out;
}

int ae_sample(const std::vector<double>& distribution, double u) {
  double cum = 0;
  for (std::size_t y = 0; y < distribution.size(); ++y) {
    cum += distribution[y];
    if (u < cum) return static_cast<int>(y);
  }
  // Rounding left u above the total mass: take the last outcome with mass.
  for (std::size_t y = distribution.size(); y-- > 0;)
    if (distribution[y] > 0) return static_cast<int>(y);
  return 0;
}

double ae_estimate(double p, const AEConfig& cfg, PublicRandomness& rng) {
  if (cfg.reps < 1) throw InputError("amplitude estimation needs at least one repetition");
  const std::vector<double> dist = ae_outcome_distribution(p, cfg.t);
  std::vector<double> est(cfg.reps);
  for (double& e : est) e = ae_value(ae_sample(dist, rng.uniform01()), cfg.t);
  std::sort(est.begin(), est.end());
  const std::size_t mid = est.size() / 2;
  return est.size() % 2 ? est[mid] : (est[mid - 1] + est[mid]) / 2;
}

double majority_error(double e, int reps) {
  double err = 0;
  for (int w = 0; w <= reps; ++w) {
    const double pr = std::exp(std::lgamma(reps + 1.0) - std::lgamma(w + 1.0) - std::lgamma(reps - w + 1.0)) *
                      std::pow(e, w) * std::pow(1 - e, reps - w);
    if (2 * w > reps) err += pr;
    if (2 * w == reps) err += pr / 2;
  }
  return err;
}

}  // namespace ccx
