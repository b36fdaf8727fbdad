#include "ccx/pif.hpp"

#include <algorithm>
#include <cmath>

#include "ccx/errors.hpp"

namespace ccx {

Value value_from_int(int v) {
  if (v == -1) return Value::kMinus;
  if (v == 1) return Value::kPlus;
  if (v == 0) return Value::kUndefined;
  throw InputError("function value must be -1, +1 or undefined, got " + std::to_string(v));
}

std::string value_name(Value v) {
  switch (v) {
    case Value::kMinus:
      return "-1";
    case Value::kPlus:
      return "+1";
    default:
      return "undefined";
  }
}

bool achievable(int n, int a, int b, int c) {
  if (a < 0 || b < 0 || a > n || b > n) return false;
  return c >= domain_lo(n, a, b) && c <= domain_hi(a, b);
}

PIFunctionTable::PIFunctionTable(int n, std::string name) : n_(n), name_(std::move(name)) {
  if (n < 1 || n > kMaxN) {
    throw InputError("function length n must be in [1, " + std::to_string(kMaxN) + "], got " +
                     std::to_string(n));
  }
  cells_.assign(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1), 0);
}

Value PIFunctionTable::at(int a, int b, int c) const {
  if (!achievable(n_, a, b, c)) return Value::kUndefined;
  return static_cast<Value>(cells_[index(a, b, c)]);
}

void PIFunctionTable::set(int a, int b, int c, Value v) {
  if (!achievable(n_, a, b, c)) {
    throw ParameterError("joint type (" + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(c) + ") is not achievable at n=" + std::to_string(n_));
  }
  cells_[index(a, b, c)] = static_cast<std::int8_t>(v);
}

bool PIFunctionTable::is_total() const {
  for (int a = 0; a <= n_; ++a)
    for (int b = 0; b <= n_; ++b)
      for (int c = domain_lo(n_, a, b); c <= domain_hi(a, b); ++c)
        if (cells_[index(a, b, c)] == 0) return false;
  return true;
}

bool PIFunctionTable::operator==(const PIFunctionTable& other) const {
  return n_ == other.n_ && cells_ == other.cells_;
}

Value eval_pif(const PIFunctionTable& f, const BitString& x, const BitString& y) {
  const auto n = static_cast<std::size_t>(f.n());
  if (x.size() != n || y.size() != n) {
    throw InputError("input length mismatch: function has n=" + std::to_string(n) + ", got |x|=" +
                     std::to_string(x.size()) + " and |y|=" + std::to_string(y.size()));
  }
  return f.at(weight(x), weight(y), and_weight(x, y));
}

Value SliceFunction::at(int c) const {
  if (c < lo || c > hi) return Value::kUndefined;
  return values[c - lo];
}

bool SliceFunction::non_trivial() const {
  Value seen = Value::kUndefined;
  for (Value v : values) {
    if (!defined(v)) continue;
    if (!defined(seen)) {
      seen = v;
    } else if (v != seen) {
      return true;
    }
  }
  return false;
}

Value SliceFunction::first_defined(int from, int to) const {
  for (int c = std::max(from, lo); c <= std::min(to, hi); ++c)
    if (defined(values[c - lo])) return values[c - lo];
  return Value::kUndefined;
}

SliceFunction derive_slice(const PIFunctionTable& f, int a, int b) {
  const int n = f.n();
  if (a < 0 || b < 0 || a > n || b > n) {
    throw InputError("slice weights out of range: a=" + std::to_string(a) +
                     " b=" + std::to_string(b) + " n=" + std::to_string(n));
  }
  SliceFunction s;
  s.a = a;
  s.b = b;
  s.lo = domain_lo(n, a, b);
  s.hi = domain_hi(a, b);
  s.values.reserve(s.hi - s.lo + 1);
  for (int c = s.lo; c <= s.hi; ++c) s.values.push_back(f.at(a, b, c));
  return s;
}

std::vector<Jump> jumps(const SliceFunction& slice) {
  std::vector<Jump> out;
  int prev = -1;
  for (int c = slice.lo; c <= slice.hi; ++c) {
    Value v = slice.values[c - slice.lo];
    if (!defined(v)) continue;
    if (prev >= 0 && slice.values[prev - slice.lo] != v) out.push_back({prev + c, c - prev});
    prev = c;
  }
  return out;
}

std::vector<Interval> intervals(int lo, int hi, const std::vector<Jump>& jump_list) {
  std::vector<Interval> out;
  int start = lo;
  for (const Jump& j : jump_list) {
    out.push_back({start, j.low()});
    start = j.high();
  }
  out.push_back({start, hi});
  return out;
}

std::vector<Interval> intervals(const SliceFunction& slice, const std::vector<Jump>& jump_list) {
  return intervals(slice.lo, slice.hi, jump_list);
}

MultisetQuad smallest_two(int n, int a, int b, int c2) {
  MultisetQuad q;
  q.cells2 = {c2, 2 * a - c2, 2 * b - c2, 2 * (n - a - b) + c2};
  std::array<int, 4> sorted = q.cells2;
  std::sort(sorted.begin(), sorted.end());
  q.n1_2 = sorted[0];
  q.n2_2 = sorted[1];
  return q;
}

MeasureResult measure_m(const PIFunctionTable& f) {
  const int n = f.n();
  MeasureResult best;
  std::int64_t best_num = 0;
  std::int64_t best_den = 1;
  for (int a = 1; a <= n - 1; ++a) {
    for (int b = 1; b <= n - 1; ++b) {
      SliceFunction s = derive_slice(f, a, b);
      for (const Jump& j : jumps(s)) {
        MultisetQuad q = smallest_two(n, a, b, j.c2);
        std::int64_t num = static_cast<std::int64_t>(q.n1_2) * q.n2_2;
        std::int64_t den = static_cast<std::int64_t>(j.g2) * j.g2;
        if (!best.witness || num * best_den > best_num * den) {
          best.witness = MeasureWitness{a, b, j.c2, j.g2};
          best.n1_2 = q.n1_2;
          best.n2_2 = q.n2_2;
          best_num = num;
          best_den = den;
        }
      }
    }
  }
  if (best.witness) best.value = std::sqrt(static_cast<double>(best_num) / best_den);
  return best;
}

bool is_nontrivial(const PIFunctionTable& f) {
  for (int a = 0; a <= f.n(); ++a)
    for (int b = 0; b <= f.n(); ++b)
      if (derive_slice(f, a, b).non_trivial()) return true;
  return false;
}

std::string variant_name(SetIncVariant v) {
  switch (v) {
    case SetIncVariant::kSetInc:
      return "setinc";
    case SetIncVariant::kESetInc:
      return "esetinc";
    case SetIncVariant::kGHD:
      return "ghd";
    case SetIncVariant::kEGHD:
      return "eghd";
  }
  return "?";
}

SetIncVariant variant_from_name(const std::string& name) {
  if (name == "setinc") return SetIncVariant::kSetInc;
  if (name == "esetinc") return SetIncVariant::kESetInc;
  if (name == "ghd") return SetIncVariant::kGHD;
  if (name == "eghd") return SetIncVariant::kEGHD;
  throw InputError("unknown SetInc variant '" + name + "'");
}

namespace {

std::string half(int doubled) {
  if (doubled % 2 == 0) return std::to_string(doubled / 2);
  return std::to_string(doubled) + "/2";
}

void validate_intersection_form(const SetIncParams& p) {
  if (p.n < 1 || p.n > PIFunctionTable::kMaxN) throw ParameterError("n out of range in " + describe(p));
  if (p.a < 0 || p.a > p.n || p.b < 0 || p.b > p.n) {
    throw ParameterError("weights out of range in " + describe(p));
  }
  if (p.g2 <= 0) throw ParameterError("gap must be positive in " + describe(p));
  if ((p.c2 - p.g2) % 2 != 0) {
    throw ParameterError("c-g and c+g must be integers in " + describe(p));
  }
  const int lo = (p.c2 - p.g2) / 2;
  const int hi = (p.c2 + p.g2) / 2;
  if (p.c2 - p.g2 < 0 || lo < domain_lo(p.n, p.a, p.b) || hi > domain_hi(p.a, p.b)) {
    throw ParameterError("c-g or c+g is not an achievable |x∧y| in " + describe(p));
  }
}

}  // namespace

std::string describe(const SetIncParams& p) {
  std::string out = variant_name(p.variant);
  if (p.bar) out += "-bar";
  out += "(n=" + std::to_string(p.n) + ",a=" + std::to_string(p.a) + ",b=" + std::to_string(p.b) +
         ",c=" + half(p.c2) + ",g=" + half(p.g2) + ")";
  return out;
}

SetIncParams setinc_ghd_convert(const SetIncParams& p) {
  SetIncParams out = p;
  if (!is_ghd(p.variant)) {
    out.variant = p.variant == SetIncVariant::kSetInc ? SetIncVariant::kGHD : SetIncVariant::kEGHD;
    out.c2 = 2 * (p.a + p.b) - 2 * p.c2;
    out.g2 = 2 * p.g2;
    return out;
  }
  if (p.c2 % 2 != 0 || p.g2 % 2 != 0) {
    throw ParameterError("distance center and gap must be integers to convert " + describe(p));
  }
  out.variant = p.variant == SetIncVariant::kGHD ? SetIncVariant::kSetInc : SetIncVariant::kESetInc;
  out.c2 = p.a + p.b - p.c2 / 2;
  out.g2 = p.g2 / 2;
  if ((out.c2 - out.g2) % 2 != 0) {
    throw ParameterError("a+b-(c'±g') is odd, so no |x∧y| realizes the distances in " +
                         describe(p));
  }
  return out;
}

SetIncParams to_intersection_form(const SetIncParams& p) {
  return is_ghd(p.variant) ? setinc_ghd_convert(p) : p;
}

void validate(const SetIncParams& p) { validate_intersection_form(to_intersection_form(p)); }

Value setinc_value(const SetIncParams& p, int k) {
  const SetIncParams q = to_intersection_form(p);
  const int lo = (q.c2 - q.g2) / 2;
  const int hi = (q.c2 + q.g2) / 2;
  Value v = Value::kUndefined;
  if (q.variant == SetIncVariant::kSetInc) {
    if (k <= lo) v = Value::kMinus;
    if (k >= hi) v = Value::kPlus;
  } else {
    if (k == hi) v = Value::kMinus;
    if (k == lo) v = Value::kPlus;
  }
  return q.bar ? negate(v) : v;
}

PIFunctionTable make_setinc(const SetIncParams& p) {
  validate(p);
  PIFunctionTable f(p.n, describe(p));
  for (int k = domain_lo(p.n, p.a, p.b); k <= domain_hi(p.a, p.b); ++k) {
    f.set(p.a, p.b, k, setinc_value(p, k));
  }
  return f;
}

PIFunctionTable make_disj(int n) {
  PIFunctionTable f(n, "disj");
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = domain_lo(n, a, b); c <= domain_hi(a, b); ++c)
        f.set(a, b, c, c == 0 ? Value::kMinus : Value::kPlus);
  return f;
}

PIFunctionTable make_eq(int n) {
  PIFunctionTable f(n, "eq");
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = domain_lo(n, a, b); c <= domain_hi(a, b); ++c)
        f.set(a, b, c, (a == b && c == a) ? Value::kMinus : Value::kPlus);
  return f;
}

PIFunctionTable make_inner_product(int n) {
  PIFunctionTable f(n, "ip");
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = domain_lo(n, a, b); c <= domain_hi(a, b); ++c)
        f.set(a, b, c, c % 2 ? Value::kMinus : Value::kPlus);
  return f;
}

PIFunctionTable make_constant(int n, Value v) {
  PIFunctionTable f(n, "constant");
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = domain_lo(n, a, b); c <= domain_hi(a, b); ++c) f.set(a, b, c, v);
  return f;
}

}  // namespace ccx
