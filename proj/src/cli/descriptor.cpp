#include <charconv>
#include <filesystem>
#include <sstream>

#include "ccx/cli.hpp"
#include "ccx/errors.hpp"
#include "ccx/function_io.hpp"

namespace ccx::cli {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

int parse_int(const std::string& text, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError(what + ": expected an integer, got \"" + text + "\"");
  }
  return v;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError(what + ": expected a number, got \"" + text + "\"");
}

std::vector<std::string> split_args(const std::string& inner) {
  std::vector<std::string> out;
  if (trim(inner).empty()) return out;
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::pair<std::string, std::string> split_key(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos) return {"", arg};
  return {trim(arg.substr(0, eq)), trim(arg.substr(eq + 1))};
}

Estimator estimator_from_name(const std::string& s) {
  if (s == "composition") return Estimator::kComposition;
  if (s == "parity") return Estimator::kParity;
  throw InputError("estimator: expected composition or parity, got \"" + s + "\"");
}

std::optional<int> auto_or_int(const std::string& s, const std::string& what) {
  if (s == "auto") return std::nullopt;
  return parse_int(s, what);
}

void parse_setinc_args(const std::vector<std::string>& args, bool quantum, ProtocolSpec& spec) {
  static const char* kFields[] = {"n", "a", "b", "c2", "g2"};
  int* targets[] = {&spec.params.n, &spec.params.a, &spec.params.b, &spec.params.c2, &spec.params.g2};
  bool seen[5] = {};
  int positional = 0;
  int extra_positional = 0;
  for (const std::string& arg : args) {
    const auto [key, val] = split_key(arg);
    int field = -1;
    for (int i = 0; i < 5; ++i)
      if (key == kFields[i]) field = i;
    if (key.empty() && positional < 5) field = positional++;
    if (field >= 0) {
      if (seen[field]) throw InputError(std::string("descriptor: field ") + kFields[field] + " given twice");
      seen[field] = true;
      *targets[field] = parse_int(val, kFields[field]);
      if (key.empty()) continue;
      while (positional < 5 && seen[positional]) ++positional;
      continue;
    }
    if (key.empty()) {
      if (!quantum && (val == "idealized" || val == "measured")) {
        spec.classical.accounting = accounting_from_name(val);
      } else if (!quantum && val == "randomized") {
      } else if (quantum && extra_positional == 0) {
        spec.quantum.t = auto_or_int(val, "t");
        ++extra_positional;
      } else if (quantum && extra_positional == 1) {
        spec.quantum.reps = auto_or_int(val, "reps");
        ++extra_positional;
      } else {
        throw InputError("descriptor: unexpected argument \"" + val + "\"");
      }
    } else if (key == "estimator") {
      (quantum ? spec.quantum.force_estimator : spec.classical.force_estimator) = estimator_from_name(val);
    } else if (key == "spread") {
      (quantum ? spec.quantum.parity_spread : spec.classical.parity_spread) = parse_double(val, "spread");
    } else if (!quantum && key == "accounting") {
      spec.classical.accounting = accounting_from_name(val);
    } else if (!quantum && key == "cs") {
      spec.classical.sample_constant = parse_double(val, "cs");
    } else if (!quantum && key == "reps") {
      spec.classical.reps = parse_int(val, "reps");
    } else if (quantum && key == "t") {
      spec.quantum.t = auto_or_int(val, "t");
    } else if (quantum && key == "reps") {
      spec.quantum.reps = auto_or_int(val, "reps");
    } else if (quantum && key == "cn") {
      spec.quantum.register_constant = parse_double(val, "cn");
    } else {
      throw InputError("descriptor: unknown option \"" + key + "\"");
    }
  }
  for (int i = 0; i < 5; ++i)
    if (!seen[i]) throw InputError(std::string("descriptor: missing field ") + kFields[i]);
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const TransportError*>(&e)) return kExitIo;
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const PromiseViolation*>(&e)) return kExitParameter;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kExitParameter;
  return kExitInternal;
}

PIFunctionTable resolve_function(const std::string& text) {
  const std::string spec = trim(text);
  if (spec.empty()) throw InputError("function: empty argument");
  std::istringstream words(spec);
  std::string name;
  words >> name;
  static const char* kBuiltins[] = {"disj", "eq", "ip", "constant", "setinc", "esetinc", "ghd", "eghd"};
  bool is_builtin = false;
  for (const char* b : kBuiltins) is_builtin |= name == b;
  if (!is_builtin || std::filesystem::exists(spec)) return load_function_file(spec);

  json builtin = {{"name", name}};
  json doc = json::object();
  std::string word;
  while (words >> word) {
    const auto [key, val] = split_key(word);
    if (key.empty()) throw InputError("function: expected key=value, got \"" + word + "\"");
    if (key == "n") {
      doc["n"] = parse_int(val, "n");
    } else if (key == "bar") {
      if (val != "true" && val != "false") throw InputError("function: bar must be true or false");
      builtin["bar"] = val == "true";
    } else if (key == "value" || key == "v") {
      builtin["value"] = val == "*" ? json("*") : json(parse_int(val, "value"));
    } else if (key == "a" || key == "b" || key == "c2" || key == "g2") {
      builtin[key] = parse_int(val, key);
    } else {
      throw InputError("function: unknown key \"" + key + "\"");
    }
  }
  doc["builtin"] = builtin;
  return function_from_json(doc);
}

ProtocolSpec parse_descriptor(const std::string& raw) {
  const std::string text = trim(raw);
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') {
    throw InputError("descriptor: expected name(args), got \"" + text + "\"");
  }
  std::string name = trim(text.substr(0, open));
  const std::string inner = text.substr(open + 1, text.size() - open - 2);
  ProtocolSpec spec;

  if (name == "pi" || name == "qpi" || name == "det-total") {
    spec.kind = name == "pi" ? ProtocolKind::kPI : name == "qpi" ? ProtocolKind::kQuantumPI : ProtocolKind::kDeterministic;
    spec.function = resolve_function(inner);
    return spec;
  }

  bool bar = false;
  if (name.size() > 4 && name.compare(name.size() - 4, 4, "-bar") == 0) {
    bar = true;
    name.resize(name.size() - 4);
  }
  bool quantum = false;
  if (!name.empty() && name[0] == 'q') {
    quantum = true;
    name = name.substr(1);
  }
  if (name != "setinc" && name != "esetinc" && name != "ghd" && name != "eghd") {
    throw InputError("descriptor: unknown protocol \"" + text.substr(0, open) + "\"");
  }
  spec.kind = quantum ? ProtocolKind::kQuantumSetInc : ProtocolKind::kSetInc;
  spec.params.variant = variant_from_name(name);
  spec.params.bar = bar;
  parse_setinc_args(split_args(inner), quantum, spec);
  validate(spec.params);
  return spec;
}

std::unique_ptr<Protocol> make_protocol(const ProtocolSpec& spec) {
  switch (spec.kind) {
    case ProtocolKind::kSetInc:
      return std::make_unique<SetIncProtocol>(spec.params, spec.classical);
    case ProtocolKind::kQuantumSetInc:
      return std::make_unique<QuantumSetIncProtocol>(spec.params, spec.quantum);
    case ProtocolKind::kPI:
      return std::make_unique<PIProtocol>(*spec.function, spec.classical);
    case ProtocolKind::kQuantumPI:
      return make_quantum_pi_protocol(*spec.function, spec.quantum);
    case ProtocolKind::kDeterministic:
      return std::make_unique<DeterministicTotalProtocol>(*spec.function);
  }
  throw InvariantError("unknown protocol kind");
}

BitPair planted_pair(int n, int a, int b, int k, PublicRandomness& rng) {
  if (!achievable(n, a, b, k)) {
    throw ParameterError("no pair with |x| = " + std::to_string(a) + ", |y| = " + std::to_string(b) +
                         ", |x∧y| = " + std::to_string(k) + " in length " + std::to_string(n));
  }
  const BitPair canon = canonical_pair(n, a, b, k);
  const std::vector<int> perm = rng.permutation(n);
  BitPair out{BitString(n, 0), BitString(n, 0)};
  for (int i = 0; i < n; ++i) {
    out.x[perm[i]] = canon.x[i];
    out.y[perm[i]] = canon.y[i];
  }
  return out;
}

}  // namespace ccx::cli
