#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccx/classical.hpp"
#include "ccx/comm.hpp"

namespace ccx {

inline constexpr int kMaxPrecisionQubits = 14;
inline constexpr int kMaxOracleQubits = 8;

// arcsin(sqrt(p)) in [0, pi/2].
double grover_angle(double p);

// sin^2(pi y / 2^t).
double ae_value(int y, int t);

// Outcome distribution of phase estimation on the Grover operator with
// eigenphases ±2θ, from the closed form 1/2 F(θ/π) + 1/2 F(1 - θ/π).
std::vector<double> ae_outcome_distribution(double p, int t);

// The same distribution from a dense simulation of the (2^t x 2)-dimensional
// circuit: Hadamards, controlled powers of Q, inverse Fourier transform.
std::vector<double> ae_statevector_oracle(double p, int t);

// Smallest y whose cumulative mass exceeds u.
int ae_sample(const std::vector<double>& distribution, double u);

struct AEConfig {
  int t = 6;
  int reps = 1;
  std::uint64_t grover_iterations() const { return (std::uint64_t{1} << t) - 1; }
};

// Median of cfg.reps independent estimates sin^2(pi y / 2^t).
double ae_estimate(double p, const AEConfig& cfg, PublicRandomness& rng);

// Probability that the median of `reps` independent verdicts is wrong when
// each is wrong with probability e (ties count half).
double majority_error(double e, int reps);

// Qubits per Grover iteration, split by direction, and per-estimate setup.
struct QCostModel {
  std::uint32_t alice_per_iteration = 0;
  std::uint32_t bob_per_iteration = 0;
  std::uint32_t setup = 0;
  std::uint32_t per_iteration() const { return alice_per_iteration + bob_per_iteration; }
};

struct QuantumOptions {
  std::optional<int> t;     // auto when empty
  std::optional<int> reps;  // auto when empty
  double register_constant = 32.0;  // C_N
  // Target per-decision error as a fraction of 1/(6 log2 n).
  double error_fraction = 0.75;
  double parity_spread = 0.65;
  std::optional<Estimator> force_estimator;
};

struct QuantumPlan {
  SetIncPlan geometry;
  EstimatorPlan route;
  std::uint64_t register_samples = 0;  // N; 0 when p is read directly
  AEConfig ae;
  QCostModel cost;
  double predicted_error = 0.0;
  std::uint64_t predicted_qubits = 0;
};

// Per-estimate error of threshold beta at both promise endpoints, maximized.
double qsetinc_estimate_error(const EstimatorPlan& route, std::uint64_t register_samples, int t);

QuantumPlan plan_qsetinc(const SetIncParams& p, const QuantumOptions& opt = {});

int run_qsetinc(Channel& ch, const QuantumPlan& plan, const PartyInputs& in);

class QuantumSetIncProtocol : public Protocol {
 public:
  explicit QuantumSetIncProtocol(const SetIncParams& p, const QuantumOptions& opt = {});
  std::string descriptor() const override;
  int input_length() const override { return params_.n; }
  bool uses_quantum() const override { return true; }
  void check_inputs(const PartyInputs& in) const override;
  int execute(Channel& ch, const PartyInputs& in) const override;
  const QuantumPlan& plan() const { return plan_; }

 private:
  SetIncParams params_;
  QuantumOptions options_;
  QuantumPlan plan_;
};

class QuantumSetIncDecider : public SetIncDecider {
 public:
  explicit QuantumSetIncDecider(const QuantumOptions& opt = {}) : options_(opt) {}
  int decide(Channel& ch, const SetIncParams& p, const PartyInputs& in) const override;
  bool uses_quantum() const override { return true; }
  std::string name() const override;

 private:
  QuantumOptions options_;
};

// PI protocol whose binary-search steps run the quantum SetInc decision.
std::unique_ptr<PIProtocol> make_quantum_pi_protocol(PIFunctionTable f, const QuantumOptions& opt = {});

}  // namespace ccx
