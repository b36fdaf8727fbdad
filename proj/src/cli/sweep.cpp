#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ccx/cli.hpp"
#include "ccx/errors.hpp"

namespace ccx::cli {

namespace {

using nlohmann::json;

using Columns = std::vector<std::pair<const char*, json>>;

std::vector<int> int_list(const json& grid, const char* key) {
  if (!grid.contains(key)) throw InputError(std::string("grid.") + key + ": missing");
  const json& v = grid.at(key);
  std::vector<int> out;
  if (v.is_number_integer()) {
    out.push_back(v.get<int>());
    return out;
  }
  if (!v.is_array()) throw InputError(std::string("grid.") + key + ": expected a list of integers");
  for (const json& e : v) {
    if (!e.is_number_integer()) throw InputError(std::string("grid.") + key + ": expected integers, got " + e.dump());
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<std::optional<int>> optional_list(const json& doc, const char* key) {
  if (!doc.contains(key)) return {std::nullopt};
  std::vector<std::optional<int>> out;
  const json& v = doc.at(key);
  const json list = v.is_array() ? v : json::array({v});
  for (const json& e : list) {
    if (e.is_string() && e.get<std::string>() == "auto") {
      out.push_back(std::nullopt);
    } else if (e.is_number_integer()) {
      out.push_back(e.get<int>());
    } else {
      throw InputError(std::string(key) + ": expected integers or \"auto\", got " + e.dump());
    }
  }
  return out;
}

std::uint64_t uint_field(const json& doc, const char* key, std::uint64_t fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw InputError(std::string(key) + ": expected a non-negative integer, got " + v.dump());
  }
  return v.get<std::uint64_t>();
}

std::string string_field(const json& doc, const char* key, const std::string& fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_string()) throw InputError(std::string(key) + ": expected a string");
  return doc.at(key).get<std::string>();
}

double half(int v2) { return v2 / 2.0; }

std::string format_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  return v.dump();
}

Columns columns(const SweepConfig& cfg, const SweepRow& r) {
  const bool quantum = cfg.protocol == ProtocolKind::kQuantumSetInc;
  const auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
  Columns c = {{"protocol", quantum ? "qsetinc" : "setinc"},
               {"variant", variant_name(r.params.variant)},
               {"n", r.params.n},
               {"a", r.params.a},
               {"b", r.params.b},
               {"c2", r.params.c2},
               {"g2", r.params.g2},
               {"t", opt(r.t)},
               {"reps", opt(r.reps)},
               {"accounting", quantum ? json(nullptr) : json(accounting_name(cfg.accounting))},
               {"status", r.skipped ? "skipped" : "ok"},
               {"reason", r.reason.empty() ? json(nullptr) : json(r.reason)}};
  if (r.skipped) {
    for (const char* k : {"n1", "n2", "trials", "successes", "success_rate", "wilson_lo", "wilson_hi", "mean_bits",
                          "mean_qubits", "max_bits", "max_qubits", "predicted", "m_value", "classical_scale",
                          "quantum_scale", "ratio_bits", "ratio_qubits"}) {
      c.emplace_back(k, nullptr);
    }
    return c;
  }
  const SuccessEstimate& e = r.estimate;
  const double n1 = half(r.n1_2);
  const double n2 = half(r.n2_2);
  // The intersection-form gap; GHD rows are converted before planning.
  const double g = half(to_intersection_form(r.params).g2);
  const double lg = std::log2(static_cast<double>(r.params.n));
  const double polylog = lg * std::max(1.0, std::log2(lg));
  const double m = std::sqrt(n1 * n2) / g;
  const double classical_scale = n1 * n2 / (g * g) * polylog;
  const double quantum_scale = m * polylog;
  c.emplace_back("n1", n1);
  c.emplace_back("n2", n2);
  c.emplace_back("trials", e.trials);
  c.emplace_back("successes", e.successes);
  c.emplace_back("success_rate", e.rate);
  c.emplace_back("wilson_lo", e.interval.lo);
  c.emplace_back("wilson_hi", e.interval.hi);
  c.emplace_back("mean_bits", e.mean_bits);
  c.emplace_back("mean_qubits", e.mean_qubits);
  c.emplace_back("max_bits", e.max_bits);
  c.emplace_back("max_qubits", e.max_qubits);
  c.emplace_back("predicted", r.predicted);
  c.emplace_back("m_value", m);
  c.emplace_back("classical_scale", classical_scale);
  c.emplace_back("quantum_scale", quantum_scale);
  c.emplace_back("ratio_bits", e.mean_bits / classical_scale);
  c.emplace_back("ratio_qubits", quantum ? json(e.mean_qubits / quantum_scale) : json(nullptr));
  return c;
}

std::string config_line(const SweepConfig& cfg) {
  std::ostringstream out;
  out << "# " << kSweepSchema << " protocol=" << (cfg.protocol == ProtocolKind::kQuantumSetInc ? "qsetinc" : "setinc")
      << " variant=" << variant_name(cfg.variant) << " accounting=" << accounting_name(cfg.accounting)
      << " trials=" << cfg.trials << " master_seed=" << cfg.master_seed;
  return out.str();
}

}  // namespace

SweepConfig sweep_config_from_json(const json& doc, std::optional<std::uint64_t> default_seed) {
  if (!doc.is_object()) throw InputError("sweep config: top level must be an object");
  SweepConfig cfg;
  const std::string protocol = string_field(doc, "protocol", "setinc");
  if (protocol == "setinc") {
    cfg.protocol = ProtocolKind::kSetInc;
  } else if (protocol == "qsetinc") {
    cfg.protocol = ProtocolKind::kQuantumSetInc;
  } else {
    throw InputError("protocol: expected setinc or qsetinc, got \"" + protocol + "\"");
  }
  cfg.variant = variant_from_name(string_field(doc, "variant", "setinc"));
  cfg.accounting = accounting_from_name(string_field(doc, "accounting", "idealized"));
  if (!doc.contains("grid") || !doc.at("grid").is_object()) throw InputError("grid: expected an object");
  const json& grid = doc.at("grid");
  if (!grid.empty()) {
    cfg.n = int_list(grid, "n");
    cfg.a = int_list(grid, "a");
    cfg.b = int_list(grid, "b");
    cfg.c2 = int_list(grid, "c2");
    cfg.g2 = int_list(grid, "g2");
  }
  cfg.t = optional_list(doc, "t");
  cfg.reps = optional_list(doc, "reps");
  if (cfg.protocol == ProtocolKind::kSetInc && doc.contains("t")) throw InputError("t: only qsetinc sweeps take t");
  cfg.trials = uint_field(doc, "trials", cfg.trials);
  if (cfg.trials == 0) throw InputError("trials: must be at least 1");
  cfg.master_seed = uint_field(doc, "master_seed", default_seed.value_or(cfg.master_seed));
  cfg.output = string_field(doc, "output", "");
  cfg.format = string_field(doc, "format", "csv");
  if (cfg.format != "csv" && cfg.format != "json") throw InputError("format: expected csv or json");
  return cfg;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  std::uint64_t cell = 0;
  for (int n : cfg.n)
    for (int a : cfg.a)
      for (int b : cfg.b)
        for (int c2 : cfg.c2)
          for (int g2 : cfg.g2)
            for (const auto& t : cfg.t)
              for (const auto& reps : cfg.reps) {
                SweepRow row;
                row.params = {n, a, b, c2, g2, cfg.variant, false};
                row.t = t;
                row.reps = reps;
                const std::uint64_t seed = derive_seed(cfg.master_seed, cell++);
                std::unique_ptr<Protocol> proto;
                try {
                  validate(row.params);
                  if (cfg.protocol == ProtocolKind::kSetInc) {
                    SetIncOptions opt;
                    opt.accounting = cfg.accounting;
                    if (reps) opt.reps = *reps;
                    auto p = std::make_unique<SetIncProtocol>(row.params, opt);
                    row.n1_2 = p->plan().n1_2;
                    row.n2_2 = p->plan().n2_2;
                    row.reps = p->plan().tester.reps;
                    row.predicted = p->plan().predicted_bits;
                    proto = std::move(p);
                  } else {
                    QuantumOptions opt;
                    opt.t = t;
                    opt.reps = reps;
                    auto p = std::make_unique<QuantumSetIncProtocol>(row.params, opt);
                    row.n1_2 = p->plan().geometry.n1_2;
                    row.n2_2 = p->plan().geometry.n2_2;
                    row.t = p->plan().ae.t;
                    row.reps = p->plan().ae.reps;
                    row.predicted = p->plan().predicted_qubits;
                    proto = std::move(p);
                  }
                } catch (const InputError& e) {
                  row.skipped = true;
                  row.reason = e.what();
                  rows.push_back(row);
                  continue;
                }
                const SetIncParams inter = to_intersection_form(row.params);
                const int ks[2] = {(inter.c2 - inter.g2) / 2, (inter.c2 + inter.g2) / 2};
                const InstanceGenerator gen = [inter, ks](PublicRandomness& rng, std::uint64_t index) {
                  const int k = ks[index % 2];
                  const BitPair p = planted_pair(inter.n, inter.a, inter.b, k, rng);
                  return TrialInstance{p.x, p.y, to_int(setinc_value(inter, k))};
                };
                row.estimate = estimate_success(*proto, gen, cfg.trials, seed);
                rows.push_back(row);
              }
  return rows;
}

std::string sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << config_line(cfg) << "\n";
  SweepRow blank;
  blank.skipped = true;
  const Columns header = columns(cfg, blank);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i].first;
  out << "\n";
  for (const SweepRow& r : rows) {
    const Columns c = columns(cfg, r);
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << format_cell(c[i].second);
    out << "\n";
  }
  return out.str();
}

json sweep_json(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  json out = {{"schema", kSweepSchema},
              {"protocol", cfg.protocol == ProtocolKind::kQuantumSetInc ? "qsetinc" : "setinc"},
              {"variant", variant_name(cfg.variant)},
              {"accounting", accounting_name(cfg.accounting)},
              {"trials", cfg.trials},
              {"master_seed", cfg.master_seed}};
  json list = json::array();
  for (const SweepRow& r : rows) {
    json row = json::object();
    for (auto& [k, v] : columns(cfg, r)) row[k] = v;
    list.push_back(row);
  }
  out["rows"] = list;
  return out;
}

std::string write_sweep(const SweepConfig& cfg) {
  std::ofstream f;
  if (!cfg.output.empty()) {
    f.open(cfg.output, std::ios::binary);
    if (!f) throw IoError("cannot write sweep output '" + cfg.output + "'");
  }
  const std::vector<SweepRow> rows = run_sweep(cfg);
  const std::string text = cfg.format == "json" ? sweep_json(cfg, rows).dump(2) + "\n" : sweep_csv(cfg, rows);
  if (cfg.output.empty()) return text;
  f << text;
  f.close();
  if (!f) throw IoError("failed writing sweep output '" + cfg.output + "'");
  return {};
}

}  // namespace ccx::cli
