#include <cmath>
#include <numeric>

#include "ccx/classical.hpp"
#include "ccx/errors.hpp"

namespace ccx {

namespace {
constexpr double kThresholdSlack = 1e-9;
}

int TesterConfig::samples() const {
  const double m = std::ceil(sample_constant * beta / (eps * eps) - 1e-9);
  if (!(m < 1e9)) return 1'000'000'000;
  return m < 1 ? 1 : static_cast<int>(m);
}

int auto_reps(int n) {
  const double lg = std::log2(static_cast<double>(n < 2 ? 2 : n));
  return static_cast<int>(std::ceil(3.0 * std::log(6.0 * lg)));
}

void validate(const TesterConfig& cfg) {
  if (!(cfg.beta > 0 && cfg.beta < 1)) throw InputError("tester beta must lie in (0, 1)");
  // eps = beta is allowed: it arises when one promise endpoint has fraction 0.
  if (!(cfg.eps > 0 && cfg.eps <= cfg.beta + 1e-12)) {
    throw InputError("tester eps must lie in (0, beta]");
  }
  if (cfg.beta + cfg.eps > 1 + 1e-12) throw InputError("tester needs beta + eps <= 1");
  if (!(cfg.sample_constant > 0)) throw InputError("sample constant must be positive");
  if (cfg.reps < 1) throw InputError("tester repetitions must be positive");
  if (cfg.samples() > 100'000'000) throw InputError("tester would need more than 1e8 samples");
}

Verdict fraction_tester(const std::function<bool()>& sample, const TesterConfig& cfg) {
  TesterConfig one = cfg;
  one.reps = 1;
  return amplified_tester(sample, one);
}

Verdict amplified_tester(const std::function<bool()>& sample, const TesterConfig& cfg) {
  validate(cfg);
  const int m = cfg.samples();
  std::vector<int> hits(cfg.reps, 0);
  for (int r = 0; r < cfg.reps; ++r) {
    for (int s = 0; s < m; ++s) hits[r] += sample() ? 1 : 0;
  }
  return tester_decision(hits, cfg);
}

Verdict tester_decision(const std::vector<int>& hits_per_rep, const TesterConfig& cfg) {
  const int m = cfg.samples();
  const double threshold = cfg.beta * m - kThresholdSlack;
  int high = 0;
  for (int h : hits_per_rep) high += h >= threshold ? 1 : 0;
  const int reps = static_cast<int>(hits_per_rep.size());
  if (2 * high > reps) return Verdict::kHigh;
  if (2 * high < reps) return Verdict::kLow;
  const long long pooled = std::accumulate(hits_per_rep.begin(), hits_per_rep.end(), 0LL);
  return pooled >= cfg.beta * m * reps - kThresholdSlack ? Verdict::kHigh : Verdict::kLow;
}

}  // namespace ccx
