#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "ccx/cli.hpp"
#include "ccx/errors.hpp"

namespace ccx::cli {

namespace {

using nlohmann::json;

double half(int v2) { return v2 / 2.0; }

json value_json(Value v) { return defined(v) ? json(to_int(v)) : json(nullptr); }

Party party_from_name(const std::string& s) {
  if (s == "alice") return Party::kAlice;
  if (s == "bob") return Party::kBob;
  throw InputError("unknown party \"" + s + "\"");
}

MessageKind kind_from_name(const std::string& s) {
  for (MessageKind k : {MessageKind::kClassical, MessageKind::kAnswer, MessageKind::kQuantum, MessageKind::kIdealized})
    if (kind_name(k) == s) return k;
  throw InputError("unknown message kind \"" + s + "\"");
}

// log2 n * log2 log2 n, the polylog factor of the cost statements.
double polylog(int n) {
  const double lg = std::log2(static_cast<double>(n));
  return lg * std::max(1.0, std::log2(lg));
}

json plan_json(const Protocol& proto) {
  if (const auto* s = dynamic_cast<const SetIncProtocol*>(&proto)) {
    const SetIncPlan& p = s->plan();
    return {{"branch", static_cast<int>(p.branch)},
            {"n1", half(p.n1_2)},
            {"n2", half(p.n2_2)},
            {"estimator", estimator_name(p.route.estimator)},
            {"samples_per_rep", p.tester.samples()},
            {"reps", p.tester.reps},
            {"predicted_bits", p.predicted_bits},
            {"analytic_bound", half(p.n1_2) * half(p.n2_2) / (half(p.params.g2) * half(p.params.g2)) *
                                   polylog(p.params.n)}};
  }
  if (const auto* q = dynamic_cast<const QuantumSetIncProtocol*>(&proto)) {
    const QuantumPlan& p = q->plan();
    const SetIncPlan& g = p.geometry;
    return {{"branch", static_cast<int>(g.branch)},
            {"n1", half(g.n1_2)},
            {"n2", half(g.n2_2)},
            {"estimator", estimator_name(p.route.estimator)},
            {"t", p.ae.t},
            {"reps", p.ae.reps},
            {"register_samples", p.register_samples},
            {"predicted_qubits", p.predicted_qubits},
            {"analytic_bound",
             std::sqrt(half(g.n1_2) * half(g.n2_2)) / half(g.params.g2) * polylog(g.params.n)}};
  }
  return nullptr;
}

}  // namespace

std::string transcript_digest(const Transcript& t) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (const Message& m : t) {
    mix(static_cast<std::uint64_t>(m.sender), 1);
    mix(static_cast<std::uint64_t>(m.kind), 1);
    mix(m.width, 4);
    mix(m.payload, 8);
    mix(m.repeat, 4);
    mix(m.charged ? 1 : 0, 1);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json run_result_to_json(const Protocol& protocol, const RunResult& r, bool include_transcript) {
  std::map<std::pair<std::string, std::string>, std::pair<std::uint64_t, std::uint64_t>> items;
  for (const LedgerEntry& e : r.ledger.messages) {
    auto& slot = items[{party_name(e.sender), kind_name(e.kind)}];
    slot.first += e.repeat;
    slot.second += static_cast<std::uint64_t>(e.width) * e.repeat;
  }
  json itemized = json::array();
  for (const auto& [key, v] : items) {
    const bool quantum = key.second == kind_name(MessageKind::kQuantum);
    itemized.push_back({{"sender", key.first}, {"kind", key.second}, {"messages", v.first},
                        {quantum ? "qubits" : "bits", v.second}});
  }
  json out = {{"descriptor", protocol.descriptor()},
              {"output", r.output},
              {"seed", r.seed},
              {"rng_algorithm", r.rng_algorithm},
              {"ledger",
               {{"bits_sent", r.ledger.bits_sent},
                {"answer_bits", r.ledger.answer_bits},
                {"qubits_sent", r.ledger.qubits_sent},
                {"rounds", r.ledger.rounds},
                {"messages", r.ledger.messages.size()},
                {"itemized", itemized}}},
              {"transcript_digest", transcript_digest(r.transcript)},
              {"transcript_length", r.transcript.size()}};
  if (include_transcript) {
    json t = json::array();
    for (const Message& m : r.transcript) {
      t.push_back({{"sender", party_name(m.sender)},
                   {"kind", kind_name(m.kind)},
                   {"width", m.width},
                   {"payload", m.payload},
                   {"repeat", m.repeat},
                   {"charged", m.charged}});
    }
    out["transcript"] = t;
  }
  return out;
}

RunResult run_result_from_json(const json& report) {
  if (!report.contains("transcript")) throw InputError("run report has no transcript");
  RunResult r;
  r.output = report.at("output").get<int>();
  r.seed = report.at("seed").get<std::uint64_t>();
  r.rng_algorithm = report.at("rng_algorithm").get<std::string>();
  for (const json& m : report.at("transcript")) {
    Message msg;
    msg.sender = party_from_name(m.at("sender").get<std::string>());
    msg.kind = kind_from_name(m.at("kind").get<std::string>());
    msg.width = m.at("width").get<std::uint32_t>();
    msg.payload = m.at("payload").get<std::uint64_t>();
    msg.repeat = m.at("repeat").get<std::uint32_t>();
    msg.charged = m.at("charged").get<bool>();
    r.transcript.push_back(msg);
  }
  r.ledger = ledger_from_transcript(r.transcript);
  if (transcript_digest(r.transcript) != report.at("transcript_digest").get<std::string>()) {
    throw InputError("run report transcript does not match its digest");
  }
  return r;
}

std::string run_report_text(const json& report) {
  std::ostringstream out;
  out << "protocol   " << report.at("descriptor").get<std::string>() << "\n";
  if (report.contains("x")) out << "x          " << report.at("x").get<std::string>() << "\n";
  if (report.contains("y")) out << "y          " << report.at("y").get<std::string>() << "\n";
  out << "output     " << report.at("output").get<int>() << "\n";
  if (report.contains("expected") && !report.at("expected").is_null()) {
    out << "expected   " << report.at("expected").get<int>() << "\n";
  }
  const json& l = report.at("ledger");
  out << "bits       " << l.at("bits_sent").get<std::uint64_t>() << " (answer "
      << l.at("answer_bits").get<std::uint64_t>() << ")\n";
  out << "qubits     " << l.at("qubits_sent").get<std::uint64_t>() << "\n";
  out << "rounds     " << l.at("rounds").get<std::uint64_t>() << "\n";
  for (const json& item : l.at("itemized")) {
    const bool quantum = item.contains("qubits");
    out << "  " << item.at("sender").get<std::string>() << " " << item.at("kind").get<std::string>() << ": "
        << item.at("messages").get<std::uint64_t>() << " messages, "
        << item.at(quantum ? "qubits" : "bits").get<std::uint64_t>() << (quantum ? " qubits" : " bits") << "\n";
  }
  out << "seed       " << report.at("seed").get<std::uint64_t>() << " (" << report.at("rng_algorithm").get<std::string>()
      << ")\n";
  out << "transcript " << report.at("transcript_digest").get<std::string>() << "\n";
  return out.str();
}

json cmd_eval(const PIFunctionTable& f, const BitString& x, const BitString& y) {
  if (static_cast<int>(x.size()) != f.n() || static_cast<int>(y.size()) != f.n()) {
    throw InputError("inputs must have length n = " + std::to_string(f.n()));
  }
  return {{"function", function_tag(f)}, {"n", f.n()},          {"a", weight(x)},
          {"b", weight(y)},              {"c", and_weight(x, y)}, {"value", value_json(eval_pif(f, x, y))}};
}

json cmd_measure(const PIFunctionTable& f) {
  const MeasureResult m = measure_m(f);
  json out = {{"function", function_tag(f)},
              {"n", f.n()},
              {"m", m.value},
              {"m_squared", {{"num", m.squared_num()}, {"den", m.squared_den()}}},
              {"n1", half(m.n1_2)},
              {"n2", half(m.n2_2)}};
  if (m.witness) {
    out["witness"] = {{"a", m.witness->a}, {"b", m.witness->b}, {"c", half(m.witness->c2)},
                      {"g", half(m.witness->g2)}, {"c2", m.witness->c2}, {"g2", m.witness->g2}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

json cmd_protocol(const ProtocolRequest& req) {
  const ProtocolSpec spec = parse_descriptor(req.descriptor);
  const std::unique_ptr<Protocol> proto = make_protocol(spec);
  const bool setinc_kind = spec.kind == ProtocolKind::kSetInc || spec.kind == ProtocolKind::kQuantumSetInc;
  const SetIncParams inter = setinc_kind ? to_intersection_form(spec.params) : SetIncParams{};

  BitString x, y;
  if (req.plant) {
    if (!setinc_kind) throw InputError("--plant needs a setinc-family descriptor");
    if (req.x || req.y) throw InputError("give either --plant or both inputs, not both");
    PublicRandomness rng(instance_seed(req.seed));
    const BitPair p = planted_pair(inter.n, inter.a, inter.b, *req.plant, rng);
    x = p.x;
    y = p.y;
  } else {
    if (!req.x || !req.y) throw InputError("protocol runs need both x and y (or --plant)");
    x = *req.x;
    y = *req.y;
  }
  check_lengths(*proto, PartyInputs{proto->input_length(), x, y});
  // Each party sees one input, so the joint gap promise is checked here.
  if (setinc_kind && !defined(setinc_value(inter, and_weight(x, y)))) {
    throw PromiseViolation("|x AND y| outside (c - g, c + g)",
                           "|x AND y| = " + std::to_string(and_weight(x, y)) + " for " + describe(inter));
  }

  const RunResult r = run_protocol(*proto, x, y, req.seed);
  json out = run_result_to_json(*proto, r, req.include_transcript);
  out["x"] = to_string(x);
  out["y"] = to_string(y);
  if (setinc_kind) {
    out["expected"] = value_json(setinc_value(inter, and_weight(x, y)));
  } else {
    out["expected"] = value_json(eval_pif(*spec.function, x, y));
  }
  const json plan = plan_json(*proto);
  if (!plan.is_null()) out["plan"] = plan;
  return out;
}

json cmd_bounds(const PIFunctionTable& f, const ReportOptions& opt) { return report_to_json(report_bounds(f, opt)); }

json cmd_rank(const PIFunctionTable& f, Encoding e, std::optional<std::pair<int, int>> slice) {
  const FieldMatrix m = slice ? pif_slice_matrix(f, slice->first, slice->second, e) : pif_matrix(f, e);
  json out = {{"function", function_tag(f)},
              {"matrix", m.provenance},
              {"encoding", encoding_name(e)},
              {"rows", m.rows},
              {"cols", m.cols},
              {"prime", "2^61-1"},
              {"rank_mod_p", rank_mod_p(m)}};
  if (m.rows <= 256 && m.cols <= 256) out["rank_rational"] = rank_rational(m);
  if (!slice && is_nontrivial(f)) {
    const RankBound b = logrank_embedding_bound(f);
    out["embedding_bound"] = b.best.bound;
    out["single_element_bound"] = b.single_element_bound;
  }
  return out;
}

json cmd_pattern_matrix(int n, int t, const std::vector<Value>& predicate) {
  if (static_cast<int>(predicate.size()) != t + 1) {
    throw InputError("predicate must list t + 1 = " + std::to_string(t + 1) + " values");
  }
  const PartialMatrix pm = pattern_matrix(n, t, symmetric_truth_table(predicate));
  std::uint64_t defined_entries = 0;
  for (auto v : pm.entries) defined_entries += v != 0;
  json out = {{"n", n}, {"t", t}, {"rows", pm.rows}, {"cols", pm.cols}, {"defined", defined_entries}};
  try {
    const PaturiResult p = paturi_gamma(predicate);
    out["paturi"] = {{"gamma", p.gamma}, {"adeg_value", p.adeg_value}};
    out["lower_bound"] = p.adeg_value / 4.0 * std::log2(static_cast<double>(n) / t);
  } catch (const NoTransition&) {
    out["paturi"] = nullptr;
  }
  if (pm.rows <= 256 && pm.cols <= 256) {
    json rows = json::array();
    for (std::uint64_t r = 0; r < pm.rows; ++r) {
      std::string row;
      for (std::uint64_t c = 0; c < pm.cols; ++c) {
        const Value v = pm.at(r, c);
        row += v == Value::kPlus ? '+' : v == Value::kMinus ? '-' : '*';
      }
      rows.push_back(row);
    }
    out["entries"] = rows;
  }
  return out;
}

json cmd_certificate(const SetIncParams& p) { return certificate_to_json(esetinc_lower_certificate(p)); }

}  // namespace ccx::cli
