#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "ccx/errors.hpp"
#include "ccx/quantum.hpp"

namespace ccx {

namespace {

constexpr double kThresholdSlack = 1e-12;
constexpr int kRepChoices[] = {1, 3, 5, 7, 9};

bool is_diagonal(CaseBranch b) {
  return b == CaseBranch::kSameDiagonal || b == CaseBranch::kAntiDiagonal;
}

double binomial_pmf(std::uint64_t n, std::uint64_t k, double p) {
  if (p <= 0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1) return k == n ? 1.0 : 0.0;
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::exp(std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1) + kk * std::log(p) +
                  (nn - kk) * std::log1p(-p));
}

// Probability that one estimate lands on the wrong side of beta.
double wrong_side(double p, double beta, bool high_is_right, int t) {
  const std::vector<double> dist = ae_outcome_distribution(p, t);
  double high = 0;
  for (int y = 0; y < static_cast<int>(dist.size()); ++y)
    if (ae_value(y, t) >= beta - kThresholdSlack) high += dist[y];
  high = std::clamp(high, 0.0, 1.0);
  return high_is_right ? 1 - high : high;
}

QCostModel cost_model(const SetIncPlan& g, Estimator e, std::uint64_t register_samples) {
  const auto l = static_cast<std::uint32_t>(ceil_log2(static_cast<std::uint64_t>(g.params.n)));
  QCostModel c;
  if (!is_diagonal(g.branch)) {
    // The state goes to Bob and back once per reflection.
    c.alice_per_iteration = l;
    c.bob_per_iteration = l;
    return c;
  }
  const auto ln = static_cast<std::uint32_t>(ceil_log2(register_samples));
  if (e == Estimator::kComposition) {
    c.alice_per_iteration = l + ln;
    c.bob_per_iteration = 2 * l;
    c.setup = ln + l;
  } else {
    c.alice_per_iteration = ln;
    c.bob_per_iteration = 1;
    c.setup = ln + 1;
  }
  return c;
}

std::uint64_t qubit_total(const QCostModel& c, const AEConfig& ae) {
  return static_cast<std::uint64_t>(ae.reps) * (ae.grover_iterations() * c.per_iteration() + c.setup);
}

std::string cache_key(const SetIncParams& p, const QuantumOptions& o) {
  std::ostringstream k;
  k << describe(p) << '|' << (o.t ? *o.t : -1) << '|' << (o.reps ? *o.reps : -1) << '|'
    << o.register_constant << '|' << o.error_fraction << '|' << o.parity_spread << '|'
    << (o.force_estimator ? static_cast<int>(*o.force_estimator) : -1);
  return k.str();
}

QuantumPlan compute_plan(const SetIncParams& p, const QuantumOptions& opt) {
  if (opt.t && (*opt.t < 1 || *opt.t > kMaxPrecisionQubits)) {
    throw InputError("precision qubits t must lie in [1, " + std::to_string(kMaxPrecisionQubits) + "]");
  }
  if (opt.reps && *opt.reps < 1) throw InputError("repetitions must be positive");
  if (!(opt.register_constant > 0)) throw InputError("register constant must be positive");

  const SetIncPlan geometry = setinc_geometry(p);
  const int n = geometry.params.n;
  const double delta = opt.error_fraction / (6.0 * std::log2(static_cast<double>(std::max(n, 2))));

  std::vector<Estimator> routes{Estimator::kComposition};
  if (is_diagonal(geometry.branch)) routes.push_back(Estimator::kParity);
  if (opt.force_estimator) {
    if (*opt.force_estimator == Estimator::kParity && !is_diagonal(geometry.branch)) {
      throw InputError("the parity estimator needs a diagonal branch");
    }
    routes = {*opt.force_estimator};
  }

  std::uint64_t register_samples = 0;
  if (is_diagonal(geometry.branch)) {
    const double ratio = static_cast<double>(geometry.n1_2) * geometry.n2_2 /
                         (static_cast<double>(geometry.params.g2) * geometry.params.g2);
    register_samples = static_cast<std::uint64_t>(std::ceil(opt.register_constant * ratio - 1e-9));
    register_samples = std::max<std::uint64_t>(register_samples, 2);
  }

  std::optional<QuantumPlan> best;       // cheapest plan meeting delta
  std::optional<QuantumPlan> fallback;   // lowest error otherwise
  for (Estimator e : routes) {
    QuantumPlan cand;
    cand.geometry = geometry;
    cand.route = estimator_route(geometry, e, opt.parity_spread);
    cand.register_samples = register_samples;
    cand.cost = cost_model(geometry, e, register_samples);
    const int t_lo = opt.t ? *opt.t : 1;
    const int t_hi = opt.t ? *opt.t : kMaxPrecisionQubits;
    for (int t = t_lo; t <= t_hi; ++t) {
      cand.ae.t = t;
      cand.ae.reps = 1;
      if (best && !opt.t && qubit_total(cand.cost, cand.ae) > best->predicted_qubits) break;
      const double err = qsetinc_estimate_error(cand.route, register_samples, t);
      for (int reps : kRepChoices) {
        if (opt.reps) reps = *opt.reps;
        cand.ae.reps = reps;
        cand.predicted_error = majority_error(err, reps);
        cand.predicted_qubits = qubit_total(cand.cost, cand.ae);
        if (!fallback || cand.predicted_error < fallback->predicted_error) fallback = cand;
        if (cand.predicted_error <= delta) {
          if (!best || cand.predicted_qubits < best->predicted_qubits) best = cand;
          break;
        }
        if (opt.reps) break;
      }
    }
  }
  return best ? *best : *fallback;
}

}  // namespace

double qsetinc_estimate_error(const EstimatorPlan& route, std::uint64_t register_samples, int t) {
  const double beta = route.beta;
  double worst = 0;
  for (int side = 0; side < 2; ++side) {
    const double p = side == 0 ? route.p_low_k : route.p_high_k;
    const double other = side == 0 ? route.p_high_k : route.p_low_k;
    const bool high_is_right = p > other;
    double err = 0;
    if (register_samples == 0) {
      err = wrong_side(p, beta, high_is_right, t);
    } else {
      const auto n = register_samples;
      const double nn = static_cast<double>(n);
      const double sd = std::sqrt(nn * p * (1 - p));
      const double lo = std::max(0.0, std::floor(nn * p - 7 * sd - 1));
      const double hi = std::min(nn, std::ceil(nn * p + 7 * sd + 1));
      double covered = 0;
      for (auto k = static_cast<std::uint64_t>(lo); k <= static_cast<std::uint64_t>(hi); ++k) {
        const double w = binomial_pmf(n, k, p);
        if (w < 1e-15) continue;
        covered += w;
        err += w * wrong_side(static_cast<double>(k) / nn, beta, high_is_right, t);
      }
      err += std::max(0.0, 1 - covered);
    }
    worst = std::max(worst, err);
  }
  return std::min(worst, 1.0);
}

QuantumPlan plan_qsetinc(const SetIncParams& p, const QuantumOptions& opt) {
  static std::mutex mu;
  static std::map<std::string, QuantumPlan> cache;
  const std::string key = cache_key(p, opt);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  QuantumPlan plan = compute_plan(p, opt);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, plan);
  return plan;
}

namespace {

// The amplitude the prepared state actually carries, from both inputs.
double true_amplitude(const QuantumPlan& plan, const BitString& x, const BitString& y) {
  const SetIncPlan& g = plan.geometry;
  std::array<int, 4> cells{};
  for (std::size_t i = 0; i < x.size(); ++i) ++cells[(x[i] ? 0 : 2) + (y[i] ? 0 : 1)];
  if (plan.route.estimator == Estimator::kParity) {
    const int t = g.branch == CaseBranch::kSameDiagonal ? cells[0] + cells[3] : cells[1] + cells[2];
    return (1.0 - std::pow(1.0 - 2.0 * plan.route.density, t)) / 2.0;
  }
  if (g.padded) ++cells[g.branch == CaseBranch::kSameDiagonal ? 3 : 1];
  const int target = cells[g.target_cell];
  const int other = cells[g.other_cell];
  return target + other > 0 ? static_cast<double>(target) / (target + other) : 0.0;
}

}  // namespace

int run_qsetinc(Channel& ch, const QuantumPlan& plan, const PartyInputs& in) {
  const int reps = plan.ae.reps;
  const auto iterations = static_cast<std::uint32_t>(plan.ae.grover_iterations());
  std::vector<double> register_u(reps, 0.0);
  std::vector<double> outcome_u(reps, 0.0);
  for (int r = 0; r < reps; ++r) {
    if (plan.cost.setup) ch.send_qubits(Party::kAlice, plan.cost.setup);
    ch.send_qubits(Party::kAlice, plan.cost.alice_per_iteration, iterations);
    ch.send_qubits(Party::kBob, plan.cost.bob_per_iteration, iterations);
    if (plan.register_samples) register_u[r] = ch.coins().uniform01();
    outcome_u[r] = ch.coins().uniform01();
  }
  // Alice holds the phase register and announces the verdict.
  return ch.send_answer(Party::kAlice, [&] {
    const double p = true_amplitude(plan, in.alice(), in.bob());
    std::vector<double> estimates(reps);
    for (int r = 0; r < reps; ++r) {
      double q = p;
      if (plan.register_samples) {
        q = static_cast<double>(binomial_from_uniform(plan.register_samples, p, register_u[r])) /
            static_cast<double>(plan.register_samples);
      }
      const std::vector<double> dist = ae_outcome_distribution(q, plan.ae.t);
      estimates[r] = ae_value(ae_sample(dist, outcome_u[r]), plan.ae.t);
    }
    std::sort(estimates.begin(), estimates.end());
    const std::size_t mid = estimates.size() / 2;
    const double median = reps % 2 ? estimates[mid] : (estimates[mid - 1] + estimates[mid]) / 2;
    const bool high = median >= plan.route.beta - kThresholdSlack;
    const bool upper = high == (plan.route.p_high_k > plan.route.p_low_k);
    const SetIncParams& q = plan.geometry.params;
    return to_int(setinc_value(q, upper ? (q.c2 + q.g2) / 2 : (q.c2 - q.g2) / 2));
  });
}

QuantumSetIncProtocol::QuantumSetIncProtocol(const SetIncParams& p, const QuantumOptions& opt)
    : params_(p), options_(opt), plan_(plan_qsetinc(p, opt)) {}

std::string QuantumSetIncProtocol::descriptor() const {
  std::ostringstream out;
  out << "q" << variant_name(params_.variant) << (params_.bar ? "-bar" : "") << "(" << params_.n << ","
      << params_.a << "," << params_.b << "," << params_.c2 << "," << params_.g2 << ",";
  if (options_.t) {
    out << *options_.t;
  } else {
    out << "auto";
  }
  out << ",";
  if (options_.reps) {
    out << *options_.reps;
  } else {
    out << "auto";
  }
  const QuantumOptions defaults;
  if (options_.register_constant != defaults.register_constant) out << ",cn=" << options_.register_constant;
  if (options_.error_fraction != defaults.error_fraction) out << ",err=" << options_.error_fraction;
  if (options_.force_estimator) out << ",estimator=" << estimator_name(*options_.force_estimator);
  if (options_.parity_spread != defaults.parity_spread) out << ",spread=" << options_.parity_spread;
  out << ")";
  return out.str();
}

void QuantumSetIncProtocol::check_inputs(const PartyInputs& in) const {
  if (in.x && weight(*in.x) != params_.a) {
    throw PromiseViolation("|x| = a", "|x| = " + std::to_string(weight(*in.x)) + ", a = " +
                                          std::to_string(params_.a));
  }
  if (in.y && weight(*in.y) != params_.b) {
    throw PromiseViolation("|y| = b", "|y| = " + std::to_string(weight(*in.y)) + ", b = " +
                                          std::to_string(params_.b));
  }
}

int QuantumSetIncProtocol::execute(Channel& ch, const PartyInputs& in) const {
  return run_qsetinc(ch, plan_, in);
}

int QuantumSetIncDecider::decide(Channel& ch, const SetIncParams& p, const PartyInputs& in) const {
  return run_qsetinc(ch, plan_qsetinc(p, options_), in);
}

std::string QuantumSetIncDecider::name() const {
  std::ostringstream out;
  out << "quantum:t=" << (options_.t ? std::to_string(*options_.t) : "auto")
      << ":reps=" << (options_.reps ? std::to_string(*options_.reps) : "auto")
      << ":cn=" << options_.register_constant;
  return out.str();
}

std::unique_ptr<PIProtocol> make_quantum_pi_protocol(PIFunctionTable f, const QuantumOptions& opt) {
  return std::make_unique<PIProtocol>(std::move(f), std::make_shared<QuantumSetIncDecider>(opt), "qpi");
}

}  // namespace ccx
