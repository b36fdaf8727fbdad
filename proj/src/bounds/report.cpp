#include <algorithm>
#include <array>
#include <cmath>

#include "ccx/bounds.hpp"
#include "ccx/classical.hpp"
#include "ccx/errors.hpp"
#include "ccx/quantum.hpp"

namespace ccx {

namespace {

using nlohmann::json;

double half(int v2) { return v2 / 2.0; }

json params_json(const SetIncParams& p) {
  return {{"text", describe(p)}, {"n", p.n},       {"a", p.a},     {"b", p.b},
          {"c", half(p.c2)},     {"g", half(p.g2)}, {"bar", p.bar}};
}

json estimate_json(const SuccessEstimate& e) {
  return {{"trials", e.trials},         {"success_rate", e.rate},     {"wilson_lo", e.interval.lo},
          {"wilson_hi", e.interval.hi}, {"mean_bits", e.mean_bits},   {"mean_qubits", e.mean_qubits},
          {"max_bits", e.max_bits},     {"max_qubits", e.max_qubits}};
}

json embedding_json(const Embedding& e) {
  return {{"kind", embedding_kind_name(e.kind)}, {"a", e.a}, {"b", e.b},
          {"complement_x", e.complement_x},     {"complement_y", e.complement_y},
          {"shift", e.shift},                   {"m", e.m}, {"w", e.w},
          {"sign", e.sign},                     {"bound", e.bound}};
}

void add_comparison(BoundsReport& r, std::string name, std::string statement, double measured, double reference) {
  if (!(reference > 0)) return;
  r.comparisons.push_back({std::move(name), std::move(statement), measured, reference, measured / reference});
}

}  // namespace

InstanceGenerator witness_inputs(const PIFunctionTable& f) {
  const MeasureResult m = measure_m(f);
  std::vector<std::array<int, 4>> cells;  // a, b, k, value
  const int n = f.n();
  if (m.witness) {
    const MeasureWitness& w = *m.witness;
    for (int k : {(w.c2 - w.g2) / 2, (w.c2 + w.g2) / 2}) cells.push_back({w.a, w.b, k, to_int(f.at(w.a, w.b, k))});
  } else {
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b)
        for (int c = domain_lo(n, a, b); c <= domain_hi(a, b); ++c)
          if (defined(f.at(a, b, c))) cells.push_back({a, b, c, to_int(f.at(a, b, c))});
  }
  if (cells.empty()) throw InputError("function has no defined inputs");
  const bool alternate = m.witness.has_value();
  return [n, cells, alternate](PublicRandomness& rng, std::uint64_t index) {
    const auto& t = alternate ? cells[index % 2] : cells[rng.below(cells.size())];
    const std::vector<int> perm = rng.permutation(n);
    BitPair pr{BitString(n, 0), BitString(n, 0)};
    for (int i = 0; i < t[2]; ++i) pr.x[perm[i]] = pr.y[perm[i]] = 1;
    for (int i = t[2]; i < t[0]; ++i) pr.x[perm[i]] = 1;
    for (int i = t[0]; i < t[0] + t[1] - t[2]; ++i) pr.y[perm[i]] = 1;
    return TrialInstance{pr.x, pr.y, t[3]};
  };
}

BoundsReport report_bounds(const PIFunctionTable& f, const ReportOptions& opt) {
  BoundsReport r;
  r.function = function_tag(f);
  r.n = f.n();
  r.measure = measure_m(f);

  if (r.measure.witness) {
    const MeasureWitness& w = *r.measure.witness;
    SetIncParams p;
    p.n = f.n();
    p.a = w.a;
    p.b = w.b;
    p.c2 = w.c2;
    p.g2 = w.g2;
    p.variant = SetIncVariant::kESetInc;
    r.certificate = esetinc_lower_certificate(p);
    if (r.certificate->case_id != 1) {
      const int k = r.certificate->terminal_k;
      r.paturi = paturi_gamma(fkl_slice(k, r.certificate->terminal_l2));
      // The terminal pattern matrix is (2k, k, f_{k,l}), so log2(n/t) = 1.
      r.pattern_matrix_bound = r.paturi->adeg_value / 4.0 * std::log2(2.0 * k / k);
    }
  }

  const bool total = f.is_total();
  const bool nontrivial = is_nontrivial(f);
  if (total && nontrivial && f.n() <= 64) r.rank_embedding = logrank_embedding_bound(f);
  if (total && f.n() <= opt.exact_rank_max_n) r.rank_mod_p = rank_mod_p(pif_matrix(f, Encoding::kPlusMinusOne));
  if (total && f.n() <= 64) {
    std::uint64_t worst = 0;
    for (int a = 0; a <= f.n(); ++a)
      for (int b = 0; b <= f.n(); ++b) worst = std::max(worst, deterministic_cost(f, a, b));
    r.deterministic_bits = worst;
  }

  if (opt.measure_costs && opt.trials > 0) {
    const InstanceGenerator gen = witness_inputs(f);
    const PIProtocol classical(f);
    r.randomized = estimate_success(classical, gen, opt.trials, opt.seed);
    const auto quantum = make_quantum_pi_protocol(f);
    r.quantum = estimate_success(*quantum, gen, opt.trials, opt.seed);
  }

  const double lg = std::log2(std::max(2, f.n()));
  const double lglg = std::max(1.0, std::log2(lg));
  const double m = r.measure.value;
  if (r.quantum) {
    const double q = r.quantum->mean_bits + r.quantum->mean_qubits;
    add_comparison(r, "quantum_vs_measure", "Q(f) >= Omega(m(f))", q, m);
    add_comparison(r, "quantum_vs_upper", "Q(f) = O(m(f) log^2 n loglog n + log n)", q, m * lg * lg * lglg + lg);
    if (r.pattern_matrix_bound) {
      add_comparison(r, "quantum_vs_pattern_matrix", "Q(f) >= adeg(f_{k,l})/4 * log(n/t) at the terminal instance", q,
                     *r.pattern_matrix_bound);
    }
  }
  if (r.randomized) {
    add_comparison(r, "randomized_vs_upper", "R(f) = O(m(f)^2 log^2 n loglog n + log n)", r.randomized->mean_bits,
                   m * m * lg * lg * lglg + lg);
  }
  if (r.deterministic_bits) {
    std::optional<double> log_rank;
    std::string source;
    if (r.rank_mod_p && *r.rank_mod_p > 1) {
      log_rank = std::log2(static_cast<double>(*r.rank_mod_p));
      source = "rank over F_p";
    } else if (r.rank_embedding && r.rank_embedding->best.bound > 1) {
      log_rank = std::log2(static_cast<double>(r.rank_embedding->best.bound));
      source = "embedding lower bound on rank";
    }
    if (log_rank) {
      add_comparison(r, "deterministic_vs_log_rank", "D(f) = O(log^2 rank(f)), rank from " + source,
                     static_cast<double>(*r.deterministic_bits), *log_rank * *log_rank);
    }
  }
  return r;
}

json certificate_to_json(const Certificate& c) {
  json steps = json::array();
  for (const ReductionStep& s : c.steps) {
    json conds = json::array();
    for (const SideCondition& sc : s.side_conditions) {
      conds.push_back({{"name", sc.name},
                       {"lhs", half(static_cast<int>(sc.lhs2))},
                       {"relation", sc.equality ? "==" : "<="},
                       {"rhs", half(static_cast<int>(sc.rhs2))},
                       {"holds", sc.holds()}});
    }
    steps.push_back({{"kind", step_name(s.kind)},
                     {"from", params_json(s.from)},
                     {"to", params_json(s.to)},
                     {"pad", {{"l1", s.args.pad.l1}, {"l2", s.args.pad.l2}, {"l3", s.args.pad.l3}, {"l", s.args.pad.l}}},
                     {"repeat", s.args.repeat},
                     {"side_conditions", conds}});
  }
  json out = {{"source", params_json(c.source)},
              {"case", c.case_id},
              {"n1", half(c.n1_2)},
              {"n2", half(c.n2_2)},
              {"m1", half(c.m1_2)},
              {"m2", half(c.m2_2)},
              {"steps", steps},
              {"terminal", params_json(c.terminal)},
              {"terminal_value", c.terminal_value},
              {"reported_bound", c.reported_bound}};
  if (c.case_id != 1) {
    out["terminal_k"] = c.terminal_k;
    out["terminal_l"] = half(c.terminal_l2);
  }
  return out;
}

json report_to_json(const BoundsReport& r) {
  json out;
  out["function"] = r.function;
  out["n"] = r.n;
  out["m"] = r.measure.value;
  out["m_squared"] = {{"num", r.measure.squared_num()}, {"den", r.measure.squared_den()}};
  if (r.measure.witness) {
    const MeasureWitness& w = *r.measure.witness;
    out["witness"] = {{"a", w.a}, {"b", w.b}, {"c", half(w.c2)}, {"g", half(w.g2)}};
  } else {
    out["witness"] = nullptr;
  }
  out["certificate_chain"] = r.certificate ? certificate_to_json(*r.certificate) : json(nullptr);
  if (r.paturi) {
    out["paturi"] = {{"k", r.certificate->terminal_k},
                     {"l", half(r.certificate->terminal_l2)},
                     {"gamma", r.paturi->gamma},
                     {"adeg_value", r.paturi->adeg_value}};
  } else {
    out["paturi"] = nullptr;
  }
  out["pattern_matrix_bound"] = r.pattern_matrix_bound ? json(*r.pattern_matrix_bound) : json(nullptr);
  json rank = json::object();
  if (r.rank_embedding) {
    rank["embedding"] = embedding_json(r.rank_embedding->best);
    rank["single_element_bound"] = r.rank_embedding->single_element_bound;
    rank["embedding_verified"] =
        r.rank_embedding->best_verified ? json(*r.rank_embedding->best_verified) : json("too large to check");
  }
  if (r.rank_mod_p) {
    rank["rank_mod_p"] = *r.rank_mod_p;
    rank["note"] = "rank over F_p with p = 2^61 - 1 is a lower bound on rank over the rationals";
  }
  out["rank_bounds"] = rank;
  json costs = json::object();
  if (r.randomized) costs["randomized"] = estimate_json(*r.randomized);
  if (r.quantum) costs["quantum"] = estimate_json(*r.quantum);
  if (r.deterministic_bits) costs["deterministic_bits"] = *r.deterministic_bits;
  out["measured_costs"] = costs;
  json comps = json::array();
  for (const CostComparison& c : r.comparisons) {
    comps.push_back({{"name", c.name},
                     {"statement", c.statement},
                     {"measured", c.measured},
                     {"reference", c.reference},
                     {"ratio", c.ratio}});
  }
  out["comparisons"] = comps;
  return out;
}

}  // namespace ccx
