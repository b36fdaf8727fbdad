#include <cmath>
#include <sstream>

#include "ccx/classical.hpp"
#include "ccx/errors.hpp"

namespace ccx {

namespace {

struct CellPair {
  int i;
  int j;
  CaseBranch branch;
};

// Tie order: rows, then columns, then the two diagonals.
constexpr CellPair kPairs[] = {
    {0, 1, CaseBranch::kRow},          {2, 3, CaseBranch::kRow},
    {0, 2, CaseBranch::kColumn},       {1, 3, CaseBranch::kColumn},
    {0, 3, CaseBranch::kSameDiagonal}, {1, 2, CaseBranch::kAntiDiagonal},
};

int cell_count(int cell, int n, int a, int b, int k) {
  switch (cell) {
    case 0: return k;
    case 1: return a - k;
    case 2: return b - k;
    default: return n - a - b + k;
  }
}

bool is_diagonal(CaseBranch b) {
  return b == CaseBranch::kSameDiagonal || b == CaseBranch::kAntiDiagonal;
}

// |x̄⊕y| on the same diagonal, |x⊕y| on the anti-diagonal.
int diagonal_size(const SetIncPlan& plan, int k) {
  const SetIncParams& p = plan.params;
  return plan.branch == CaseBranch::kSameDiagonal ? p.n - p.a - p.b + 2 * k : p.a + p.b - 2 * k;
}

double parity_mismatch(double density, int t) {
  return (1.0 - std::pow(1.0 - 2.0 * density, t)) / 2.0;
}

}  // namespace

EstimatorPlan estimator_route(const SetIncPlan& plan, Estimator e, double parity_spread) {
  if (e == Estimator::kParity && !is_diagonal(plan.branch)) {
    throw InputError("the parity estimator needs a diagonal branch");
  }
  const SetIncParams& p = plan.params;
  const int lo = (p.c2 - p.g2) / 2;
  const int hi = (p.c2 + p.g2) / 2;
  EstimatorPlan r;
  r.estimator = e;
  if (e == Estimator::kParity) {
    const double mid = (diagonal_size(plan, lo) + diagonal_size(plan, hi)) / 2.0;
    r.density = (1.0 - std::exp(-parity_spread / mid)) / 2.0;
    r.bits_per_sample = 1;
  } else {
    const int L = ceil_log2(static_cast<std::uint64_t>(plan.work_n));
    r.bits_per_sample = is_diagonal(plan.branch) ? idealized_sample_bits(plan.work_n) + 1 : L + 1;
  }
  SetIncPlan tmp = plan;
  tmp.route = r;
  r.p_low_k = hit_fraction(tmp, e, lo);
  r.p_high_k = hit_fraction(tmp, e, hi);
  r.beta = (r.p_low_k + r.p_high_k) / 2.0;
  r.eps = std::abs(r.p_high_k - r.p_low_k) / 2.0;
  return r;
}

namespace {

std::uint64_t route_cost(const EstimatorPlan& r, const TesterConfig& t) {
  const auto samples = static_cast<std::uint64_t>(t.reps) * static_cast<std::uint64_t>(t.samples());
  return samples * r.bits_per_sample + (r.estimator == Estimator::kParity ? 1 : 0);
}

TesterConfig tester_for(const EstimatorPlan& r, const SetIncOptions& opt, int n) {
  TesterConfig t;
  t.beta = r.beta;
  t.eps = r.eps;
  t.sample_constant = opt.sample_constant;
  t.reps = opt.reps > 0 ? opt.reps : auto_reps(n);
  return t;
}

int label_for(const SetIncPlan& plan, Verdict v) {
  const bool increasing = plan.route.p_high_k > plan.route.p_low_k;
  const bool upper = (v == Verdict::kHigh) == increasing;
  const int k = upper ? (plan.params.c2 + plan.params.g2) / 2 : (plan.params.c2 - plan.params.g2) / 2;
  return to_int(setinc_value(plan.params, k));
}

// Uniform positions of `s` equal to `bit`, built on first use.
class Positions {
 public:
  Positions(const BitString* s, std::uint8_t bit) : s_(s), bit_(bit) {}
  int operator[](std::uint64_t j) {
    if (!built_) {
      for (int i = 0; i < static_cast<int>(s_->size()); ++i)
        if ((*s_)[i] == bit_) list_.push_back(i);
      built_ = true;
    }
    if (j >= list_.size()) throw InvariantError("sample index beyond the input's weight class");
    return list_[j];
  }

 private:
  const BitString* s_;
  std::uint8_t bit_;
  bool built_ = false;
  std::vector<int> list_;
};

int run_row_or_column(Channel& ch, const SetIncPlan& plan, const BitString* x, const BitString* y) {
  const SetIncParams& p = plan.params;
  const bool row = plan.branch == CaseBranch::kRow;
  const Party sampler = row ? Party::kAlice : Party::kBob;
  const Party responder = other(sampler);
  const BitString* mine = row ? x : y;
  const BitString* theirs = row ? y : x;
  // The sampler's fixed bit: row x=1 holds cells 0,1; column y=1 holds cells 0,2.
  const std::uint8_t fixed = row ? (plan.target_cell < 2 ? 1 : 0) : (plan.target_cell % 2 == 0 ? 1 : 0);
  const int weight_of_mine = row ? p.a : p.b;
  const std::uint64_t count = fixed ? weight_of_mine : p.n - weight_of_mine;
  const auto width = static_cast<std::uint32_t>(ceil_log2(static_cast<std::uint64_t>(p.n)));
  Positions positions(mine, fixed);

  const int m = plan.tester.samples();
  std::vector<int> hits(plan.tester.reps, 0);
  for (int r = 0; r < plan.tester.reps; ++r) {
    for (int s = 0; s < m; ++s) {
      const std::uint64_t j = ch.coins().below(count);
      const std::uint64_t idx =
          ch.send(sampler, width, [&] { return static_cast<std::uint64_t>(positions[j]); });
      const bool rb = ch.send_bit(responder, [&] {
        if (idx >= theirs->size()) throw TransportError("peer sent an out-of-range index");
        return (*theirs)[idx] != 0;
      });
      const int xb = row ? fixed : rb;
      const int yb = row ? rb : fixed;
      const int cell = (xb ? 0 : 2) + (yb ? 0 : 1);
      hits[r] += cell == plan.target_cell ? 1 : 0;
    }
  }
  return label_for(plan, tester_decision(hits, plan.tester));
}

int run_diagonal_composition(Channel& ch, const SetIncPlan& plan, const SamplerAccounting accounting,
                             const BitString* x, const BitString* y) {
  const bool same = plan.branch == CaseBranch::kSameDiagonal;
  std::optional<BitString> xw;
  std::optional<BitString> yw;
  std::optional<BitString> u;
  if (x) {
    xw = plan.padded ? concat(*x, BitString{static_cast<std::uint8_t>(same ? 0 : 1)}) : *x;
    u = same ? complement(*xw) : *xw;
  }
  if (y) yw = plan.padded ? concat(*y, BitString{0}) : *y;

  const int m = plan.tester.samples();
  std::vector<int> hits(plan.tester.reps, 0);
  for (int r = 0; r < plan.tester.reps; ++r) {
    for (int s = 0; s < m; ++s) {
      const int i = uniform_sample_difference(ch, plan.work_n, u ? &*u : nullptr,
                                              yw ? &*yw : nullptr, accounting);
      const bool xb = ch.send_bit(Party::kAlice, [&] { return (*xw)[i] != 0; });
      const int cell = same ? (xb ? 0 : 3) : (xb ? 1 : 2);
      hits[r] += cell == plan.target_cell ? 1 : 0;
    }
  }
  return label_for(plan, tester_decision(hits, plan.tester));
}

int run_diagonal_parity(Channel& ch, const SetIncPlan& plan, const BitString* x, const BitString* y) {
  const int n = plan.params.n;
  const bool same = plan.branch == CaseBranch::kSameDiagonal;
  const double log_keep = std::log1p(-plan.route.density);
  const int m = plan.tester.samples();
  const int total = plan.tester.reps * m;

  std::vector<int> offsets{0};
  std::vector<int> members;
  std::vector<std::uint8_t> alice_bits;
  offsets.reserve(total + 1);
  alice_bits.reserve(total);
  for (int s = 0; s < total; ++s) {
    // Geometric skipping draws each position independently with the subset density.
    const std::size_t start = members.size();
    double pos = -1;
    for (;;) {
      const double u = 1.0 - ch.coins().uniform01();
      pos += 1.0 + std::floor(std::log(u) / log_keep);
      if (pos >= n) break;
      members.push_back(static_cast<int>(pos));
    }
    offsets.push_back(static_cast<int>(members.size()));
    const bool bit = ch.send_bit(Party::kAlice, [&] {
      int acc = same ? static_cast<int>(members.size() - start) : 0;
      for (std::size_t q = start; q < members.size(); ++q) acc += (*x)[members[q]];
      return (acc & 1) != 0;
    });
    alice_bits.push_back(bit ? 1 : 0);
  }
  return ch.send_answer(Party::kBob, [&] {
    std::vector<int> hits(plan.tester.reps, 0);
    for (int s = 0; s < total; ++s) {
      int acc = 0;
      for (int q = offsets[s]; q < offsets[s + 1]; ++q) acc += (*y)[members[q]];
      hits[s / m] += ((acc & 1) != alice_bits[s]) ? 1 : 0;
    }
    return label_for(plan, tester_decision(hits, plan.tester));
  });
}

}  // namespace

std::string estimator_name(Estimator e) {
  return e == Estimator::kComposition ? "composition" : "parity";
}

double hit_fraction(const SetIncPlan& plan, Estimator e, int k) {
  if (e == Estimator::kParity) {
    if (!is_diagonal(plan.branch)) throw InputError("the parity estimator needs a diagonal branch");
    return parity_mismatch(plan.route.density, diagonal_size(plan, k));
  }
  const double t = cell_count(plan.target_cell, plan.work_n, plan.work_a, plan.work_b, k);
  const double o = cell_count(plan.other_cell, plan.work_n, plan.work_a, plan.work_b, k);
  return t + o > 0 ? t / (t + o) : 0.0;
}

SetIncPlan setinc_geometry(const SetIncParams& input) {
  validate(input);
  SetIncPlan plan;
  plan.params = to_intersection_form(input);
  const SetIncParams& p = plan.params;
  const MultisetQuad quad = smallest_two(p.n, p.a, p.b, p.c2);
  plan.n1_2 = quad.n1_2;
  plan.n2_2 = quad.n2_2;
  bool found = false;
  for (const CellPair& pair : kPairs) {
    const int ci = quad.cells2[pair.i];
    const int cj = quad.cells2[pair.j];
    if ((ci == quad.n1_2 && cj == quad.n2_2) || (ci == quad.n2_2 && cj == quad.n1_2)) {
      plan.branch = pair.branch;
      plan.target_cell = ci <= cj ? pair.i : pair.j;
      plan.other_cell = ci <= cj ? pair.j : pair.i;
      found = true;
      break;
    }
  }
  if (!found) throw InvariantError("no cell pair holds the two smallest counts");

  plan.work_n = p.n;
  plan.work_a = p.a;
  plan.work_b = p.b;
  if (plan.branch == CaseBranch::kSameDiagonal && p.a + p.b == p.n) {
    plan.padded = true;
    plan.work_n = p.n + 1;
  } else if (plan.branch == CaseBranch::kAntiDiagonal && p.a == p.b) {
    plan.padded = true;
    plan.work_n = p.n + 1;
    plan.work_a = p.a + 1;
  }
  return plan;
}

SetIncPlan plan_setinc(const SetIncParams& input, const SetIncOptions& opt) {
  SetIncPlan plan = setinc_geometry(input);
  const SetIncParams& p = plan.params;
  plan.accounting = opt.accounting;
  EstimatorPlan best = estimator_route(plan, Estimator::kComposition, opt.parity_spread);
  TesterConfig best_tester = tester_for(best, opt, p.n);
  if (is_diagonal(plan.branch)) {
    const EstimatorPlan parity = estimator_route(plan, Estimator::kParity, opt.parity_spread);
    const TesterConfig parity_tester = tester_for(parity, opt, p.n);
    const bool choose_parity =
        opt.force_estimator ? *opt.force_estimator == Estimator::kParity
                            : route_cost(parity, parity_tester) < route_cost(best, best_tester);
    if (choose_parity) {
      best = parity;
      best_tester = parity_tester;
    }
  } else if (opt.force_estimator == Estimator::kParity) {
    throw InputError("the parity estimator needs a diagonal branch");
  }
  plan.route = best;
  plan.tester = best_tester;
  validate(plan.tester);
  plan.predicted_bits = route_cost(plan.route, plan.tester);
  return plan;
}

int run_setinc(Channel& ch, const SetIncPlan& plan, const PartyInputs& in) {
  const BitString* x = in.x ? &*in.x : nullptr;
  const BitString* y = in.y ? &*in.y : nullptr;
  if (!is_diagonal(plan.branch)) return run_row_or_column(ch, plan, x, y);
  if (plan.route.estimator == Estimator::kParity) return run_diagonal_parity(ch, plan, x, y);
  return run_diagonal_composition(ch, plan, plan.accounting, x, y);
}

SetIncProtocol::SetIncProtocol(const SetIncParams& p, const SetIncOptions& opt)
    : params_(p), options_(opt), plan_(plan_setinc(p, opt)) {}

std::string SetIncProtocol::descriptor() const {
  std::ostringstream out;
  out << variant_name(params_.variant) << (params_.bar ? "-bar" : "") << "(" << params_.n << ","
      << params_.a << "," << params_.b << "," << params_.c2 << "," << params_.g2 << ","
      << accounting_name(options_.accounting);
  const SetIncOptions defaults;
  if (options_.sample_constant != defaults.sample_constant) out << ",cs=" << options_.sample_constant;
  if (options_.reps != defaults.reps) out << ",reps=" << options_.reps;
  if (options_.force_estimator) out << ",estimator=" << estimator_name(*options_.force_estimator);
  if (options_.parity_spread != defaults.parity_spread) out << ",spread=" << options_.parity_spread;
  out << ")";
  return out.str();
}

void SetIncProtocol::check_inputs(const PartyInputs& in) const {
  if (in.x && weight(*in.x) != params_.a) {
    throw PromiseViolation("|x| = a", "|x| = " + std::to_string(weight(*in.x)) + ", a = " +
                                          std::to_string(params_.a));
  }
  if (in.y && weight(*in.y) != params_.b) {
    throw PromiseViolation("|y| = b", "|y| = " + std::to_string(weight(*in.y)) + ", b = " +
                                          std::to_string(params_.b));
  }
}

int SetIncProtocol::execute(Channel& ch, const PartyInputs& in) const { return run_setinc(ch, plan_, in); }

int ClassicalSetIncDecider::decide(Channel& ch, const SetIncParams& p, const PartyInputs& in) const {
  return run_setinc(ch, plan_setinc(p, options_), in);
}

std::string ClassicalSetIncDecider::name() const {
  std::ostringstream out;
  out << "classical:" << accounting_name(options_.accounting) << ":cs=" << options_.sample_constant
      << ":reps=" << options_.reps;
  return out.str();
}

}  // namespace ccx
