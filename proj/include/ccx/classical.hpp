#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "ccx/comm.hpp"
#include "ccx/pif.hpp"

namespace ccx {

// ---- combinadic ranking ----

// C(n, k), throwing InputError if it does not fit in 64 bits.
std::uint64_t binomial_coefficient(int n, int k);
// Colex rank of the support {s_0 < s_1 < ...}: sum of C(s_j, j+1).
std::uint64_t combinadic_rank(const BitString& x);
BitString combinadic_unrank(std::uint64_t rank, int n, int a);

// ---- difference search and sampling ----

// Prefix-weight binary search: at each level Alice sends her left-half weight
// in ceil(log2(len+1)) bits and Bob replies whether his differs. Requires |x| != |y|.
int find_first_difference(const BitString& x, const BitString& y);
// Same search over a channel; Alice holds u, Bob holds v (null where remote).
int find_first_difference(Channel& ch, int n, const BitString* u, const BitString* v);

enum class SamplerAccounting { kMeasured, kIdealized };
std::string accounting_name(SamplerAccounting a);
SamplerAccounting accounting_from_name(const std::string& name);

// Bits of the idealized per-sample charge, 2*ceil(log2 n).
std::uint32_t idealized_sample_bits(int n);

// Uniform index in S = {i : u_i != v_i}. Both parties permute positions with a
// public permutation and locate the first differing permuted position by a
// binary search with public random-parity fingerprints, then confirm it.
// Idealized accounting runs the search uncharged and charges 2*ceil(log2 n).
int uniform_sample_difference(Channel& ch, int n, const BitString* u, const BitString* v,
                              SamplerAccounting accounting);
// Standalone form on an in-process channel over `coins`. Requires |x| != |y|.
int uniform_sample_difference(const BitString& x, const BitString& y, PublicRandomness& coins,
                              SamplerAccounting accounting = SamplerAccounting::kMeasured);

// ---- fraction tester ----

struct TesterConfig {
  double beta = 0.5;
  double eps = 0.25;
  double sample_constant = 4.0;  // C_s
  int reps = 1;

  int samples() const;
};

// ceil(3 ln(6 log2 n)).
int auto_reps(int n);
void validate(const TesterConfig& cfg);

enum class Verdict { kLow, kHigh };

// One run: m samples, HIGH iff hits >= beta*m.
Verdict fraction_tester(const std::function<bool()>& sample, const TesterConfig& cfg);
// Majority over cfg.reps runs; ties go to the pooled fraction.
Verdict amplified_tester(const std::function<bool()>& sample, const TesterConfig& cfg);
Verdict tester_decision(const std::vector<int>& hits_per_rep, const TesterConfig& cfg);

// ---- SetInc ----

// Which pair of joint-type cells holds the two smallest counts.
// Cells: 0 = x1y1, 1 = x1y0, 2 = x0y1, 3 = x0y0.
enum class CaseBranch { kRow = 1, kColumn = 2, kSameDiagonal = 3, kAntiDiagonal = 4 };
enum class Estimator { kComposition, kParity };

std::string estimator_name(Estimator e);

struct SetIncOptions {
  double sample_constant = 4.0;
  int reps = 0;  // 0 = auto_reps(n)
  SamplerAccounting accounting = SamplerAccounting::kIdealized;
  std::optional<Estimator> force_estimator;
  double parity_spread = 0.65;
};

struct EstimatorPlan {
  Estimator estimator = Estimator::kComposition;
  double p_low_k = 0;   // fraction at |x∧y| = c-g
  double p_high_k = 0;  // fraction at |x∧y| = c+g
  double beta = 0;
  double eps = 0;
  double density = 0;  // parity subsets only
  std::uint64_t bits_per_sample = 0;
};

struct SetIncPlan {
  SetIncParams params;  // intersection form
  CaseBranch branch = CaseBranch::kRow;
  int target_cell = 0;
  int other_cell = 0;
  int n1_2 = 0;
  int n2_2 = 0;
  // Diagonal composition pads one position when the sampled set would have
  // equal weights on both sides.
  bool padded = false;
  int work_n = 0;
  int work_a = 0;
  int work_b = 0;
  EstimatorPlan route;
  TesterConfig tester;
  SamplerAccounting accounting = SamplerAccounting::kIdealized;
  std::uint64_t predicted_bits = 0;
};

// Predicted fraction of hits for |x∧y| = k along `route` of `plan`.
double hit_fraction(const SetIncPlan& plan, Estimator e, int k);

// Branch, counted cells and padding of p; no estimator chosen yet.
SetIncPlan setinc_geometry(const SetIncParams& p);
// Fractions and thresholds of estimator e on a geometry from setinc_geometry.
EstimatorPlan estimator_route(const SetIncPlan& geometry, Estimator e, double parity_spread = 0.65);

SetIncPlan plan_setinc(const SetIncParams& p, const SetIncOptions& opt = {});

// One amplified SetInc decision on `ch`; returns the label of p's variant.
int run_setinc(Channel& ch, const SetIncPlan& plan, const PartyInputs& in);

class SetIncProtocol : public Protocol {
 public:
  explicit SetIncProtocol(const SetIncParams& p, const SetIncOptions& opt = {});
  std::string descriptor() const override;
  int input_length() const override { return params_.n; }
  void check_inputs(const PartyInputs& in) const override;
  int execute(Channel& ch, const PartyInputs& in) const override;
  const SetIncPlan& plan() const { return plan_; }
  const SetIncParams& params() const { return params_; }

 private:
  SetIncParams params_;
  SetIncOptions options_;
  SetIncPlan plan_;
};

// ---- general PI functions ----

// Decides SetInc(n,a,b,c,g) inside a larger protocol.
class SetIncDecider {
 public:
  virtual ~SetIncDecider() = default;
  virtual int decide(Channel& ch, const SetIncParams& p, const PartyInputs& in) const = 0;
  virtual bool uses_quantum() const { return false; }
  virtual std::string name() const = 0;
};

class ClassicalSetIncDecider : public SetIncDecider {
 public:
  explicit ClassicalSetIncDecider(const SetIncOptions& opt = {}) : options_(opt) {}
  int decide(Channel& ch, const SetIncParams& p, const PartyInputs& in) const override;
  std::string name() const override;

 private:
  SetIncOptions options_;
};

// Exchanges weights, then binary-searches the slice's jumps with one SetInc
// decision per step and outputs the value of the surviving interval.
class PIProtocol : public Protocol {
 public:
  PIProtocol(PIFunctionTable f, std::shared_ptr<const SetIncDecider> decider, std::string label = "pi");
  explicit PIProtocol(PIFunctionTable f, const SetIncOptions& opt = {});
  std::string descriptor() const override;
  int input_length() const override { return f_.n(); }
  bool uses_quantum() const override { return decider_->uses_quantum(); }
  void check_inputs(const PartyInputs& in) const override;
  int execute(Channel& ch, const PartyInputs& in) const override;

 private:
  PIFunctionTable f_;
  std::shared_ptr<const SetIncDecider> decider_;
  std::string label_;
};

// Exchanges weights; on a non-constant slice the party with the smaller weight
// class sends its input's combinadic rank and the other returns the answer bit.
class DeterministicTotalProtocol : public Protocol {
 public:
  explicit DeterministicTotalProtocol(PIFunctionTable f);
  std::string descriptor() const override;
  int input_length() const override { return f_.n(); }
  void check_inputs(const PartyInputs& in) const override;
  int execute(Channel& ch, const PartyInputs& in) const override;

 private:
  PIFunctionTable f_;
};

// 2*ceil(log2(n+1)), plus min(ceil(log2 C(n,a)), ceil(log2 C(n,b))) + 1 when
// the (a,b) slice is non-constant.
std::uint64_t deterministic_cost(const PIFunctionTable& f, int a, int b);

// Canonical name of a function for descriptors: its name plus a content hash.
std::string function_tag(const PIFunctionTable& f);

}  // namespace ccx
