#include "ccx/function_io.hpp"

#include <fstream>
#include <sstream>

#include "ccx/errors.hpp"

namespace ccx {

namespace {

using nlohmann::json;

int require_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(where + ": missing required field \"" + key + "\"");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw InputError(where + "." + key + ": expected an integer, got " + v.dump());
  }
  return v.get<int>();
}

Value parse_value(const json& v, const std::string& where) {
  if (v.is_string() && v.get<std::string>() == "*") return Value::kUndefined;
  if (v.is_number_integer()) {
    int i = v.get<int>();
    if (i == -1 || i == 1) return value_from_int(i);
  }
  throw InputError(where + ": expected -1, 1 or \"*\", got " + v.dump());
}

void fill(PIFunctionTable& f, Value v) {
  const int n = f.n();
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = domain_lo(n, a, b); c <= domain_hi(a, b); ++c) f.set(a, b, c, v);
}

void overlay(PIFunctionTable& f, const PIFunctionTable& src) {
  const int n = f.n();
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = domain_lo(n, a, b); c <= domain_hi(a, b); ++c) {
        Value v = src.at(a, b, c);
        if (defined(v)) f.set(a, b, c, v);
      }
}

PIFunctionTable builtin(int n, const json& spec) {
  std::string name;
  json params = json::object();
  if (spec.is_string()) {
    name = spec.get<std::string>();
  } else if (spec.is_object()) {
    if (!spec.contains("name") || !spec.at("name").is_string()) {
      throw InputError("builtin: missing string field \"name\"");
    }
    name = spec.at("name").get<std::string>();
    params = spec;
  } else {
    throw InputError("builtin: expected a name or an object, got " + spec.dump());
  }
  if (name == "disj") return make_disj(n);
  if (name == "eq") return make_eq(n);
  if (name == "ip") return make_inner_product(n);
  if (name == "constant") {
    Value v = params.contains("value") ? parse_value(params.at("value"), "builtin.value")
                                       : Value::kPlus;
    return make_constant(n, v);
  }
  if (name == "setinc" || name == "esetinc" || name == "ghd" || name == "eghd") {
    SetIncParams p;
    p.n = n;
    p.variant = variant_from_name(name);
    p.a = require_int(params, "a", "builtin");
    p.b = require_int(params, "b", "builtin");
    p.c2 = require_int(params, "c2", "builtin");
    p.g2 = require_int(params, "g2", "builtin");
    if (params.contains("bar")) {
      if (!params.at("bar").is_boolean()) throw InputError("builtin.bar: expected a boolean");
      p.bar = params.at("bar").get<bool>();
    }
    return make_setinc(p);
  }
  throw InputError("builtin: unknown function name \"" + name + "\"");
}

}  // namespace

PIFunctionTable function_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("function file: top level must be an object");
  const int n = require_int(doc, "n", "function file");
  PIFunctionTable f(n);
  if (doc.contains("default")) fill(f, parse_value(doc.at("default"), "default"));
  if (doc.contains("builtin")) {
    PIFunctionTable b = builtin(n, doc.at("builtin"));
    overlay(f, b);
    f.set_name(b.name());
  }
  if (doc.contains("entries")) {
    const json& entries = doc.at("entries");
    if (!entries.is_array()) throw InputError("entries: expected an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string where = "entries[" + std::to_string(i) + "]";
      const json& e = entries[i];
      int a = require_int(e, "a", where);
      int b = require_int(e, "b", where);
      int c = require_int(e, "c", where);
      if (!e.contains("v")) throw InputError(where + ": missing required field \"v\"");
      Value v = parse_value(e.at("v"), where + ".v");
      if (!achievable(n, a, b, c)) {
        throw InputError(where + ": joint type (" + std::to_string(a) + "," + std::to_string(b) +
                         "," + std::to_string(c) + ") is not achievable at n=" + std::to_string(n));
      }
      f.set(a, b, c, v);
    }
  }
  if (doc.contains("name") && doc.at("name").is_string()) f.set_name(doc.at("name").get<std::string>());
  return f;
}

PIFunctionTable function_from_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError("function file: JSON parse error at line " + std::to_string(line) +
                     ", column " + std::to_string(column) + ": " + e.what());
  }
  return function_from_json(doc);
}

PIFunctionTable load_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open function file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return function_from_text(buf.str());
}

json function_to_json(const PIFunctionTable& f) {
  json doc;
  doc["n"] = f.n();
  if (!f.name().empty()) doc["name"] = f.name();
  doc["default"] = "*";
  json entries = json::array();
  const int n = f.n();
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = domain_lo(n, a, b); c <= domain_hi(a, b); ++c) {
        Value v = f.at(a, b, c);
        if (defined(v)) entries.push_back({{"a", a}, {"b", b}, {"c", c}, {"v", to_int(v)}});
      }
  doc["entries"] = entries;
  return doc;
}

}  // namespace ccx
