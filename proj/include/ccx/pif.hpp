#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccx/bits.hpp"

namespace ccx {

enum class Value : std::int8_t { kMinus = -1, kUndefined = 0, kPlus = 1 };

inline Value negate(Value v) { return static_cast<Value>(-static_cast<int>(v)); }
inline bool defined(Value v) { return v != Value::kUndefined; }
inline int to_int(Value v) { return static_cast<int>(v); }
Value value_from_int(int v);
std::string value_name(Value v);

// Range of |x∧y| for |x| = a, |y| = b in {0,1}^n.
inline int domain_lo(int n, int a, int b) { return a + b - n > 0 ? a + b - n : 0; }
inline int domain_hi(int a, int b) { return a < b ? a : b; }
bool achievable(int n, int a, int b, int c);

// A permutation-invariant function stored by joint type (|x|, |y|, |x∧y|).
// Dense (n+1)^3 cells; unreachable cells stay undefined.
class PIFunctionTable {
 public:
  static constexpr int kMaxN = 256;

  explicit PIFunctionTable(int n, std::string name = {});

  int n() const { return n_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  Value at(int a, int b, int c) const;
  void set(int a, int b, int c, Value v);

  bool is_total() const;
  bool operator==(const PIFunctionTable& other) const;

 private:
  std::size_t index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * (n_ + 1) + b) * (n_ + 1) + c;
  }

  int n_;
  std::string name_;
  std::vector<std::int8_t> cells_;
};

Value eval_pif(const PIFunctionTable& f, const BitString& x, const BitString& y);

struct SliceFunction {
  int a = 0;
  int b = 0;
  int lo = 0;
  int hi = 0;
  std::vector<Value> values;  // values[c - lo]

  Value at(int c) const;
  bool non_trivial() const;
  // Some defined value in [from, to], or undefined if none.
  Value first_defined(int from, int to) const;
};

SliceFunction derive_slice(const PIFunctionTable& f, int a, int b);

// Doubled center and gap: the jump joins defined points (c2-g2)/2 and (c2+g2)/2.
struct Jump {
  int c2 = 0;
  int g2 = 0;
  int low() const { return (c2 - g2) / 2; }
  int high() const { return (c2 + g2) / 2; }
  bool operator==(const Jump&) const = default;
};

std::vector<Jump> jumps(const SliceFunction& slice);

struct Interval {
  int lo = 0;
  int hi = 0;
  bool operator==(const Interval&) const = default;
};

std::vector<Interval> intervals(int lo, int hi, const std::vector<Jump>& jump_list);
std::vector<Interval> intervals(const SliceFunction& slice, const std::vector<Jump>& jump_list);

// The cells of the joint-type table at |x∧y| = c, doubled:
// cells2 = {2c, 2(a-c), 2(b-c), 2(n-a-b+c)} for x1y1, x1y0, x0y1, x0y0.
struct MultisetQuad {
  std::array<int, 4> cells2{};
  int n1_2 = 0;
  int n2_2 = 0;
};

MultisetQuad smallest_two(int n, int a, int b, int c2);

struct MeasureWitness {
  int a = 0;
  int b = 0;
  int c2 = 0;
  int g2 = 0;
  bool operator==(const MeasureWitness&) const = default;
};

// m(f) = sqrt(n1 n2)/g at the witness; m(f)^2 = n1_2 * n2_2 / g2^2 exactly.
struct MeasureResult {
  double value = 0.0;
  std::optional<MeasureWitness> witness;
  int n1_2 = 0;
  int n2_2 = 0;
  std::int64_t squared_num() const { return static_cast<std::int64_t>(n1_2) * n2_2; }
  std::int64_t squared_den() const {
    return witness ? static_cast<std::int64_t>(witness->g2) * witness->g2 : 1;
  }
};

MeasureResult measure_m(const PIFunctionTable& f);

// True iff some slice is non-constant on its defined points.
bool is_nontrivial(const PIFunctionTable& f);

enum class SetIncVariant { kSetInc, kESetInc, kGHD, kEGHD };

std::string variant_name(SetIncVariant v);
SetIncVariant variant_from_name(const std::string& name);
inline bool is_exact(SetIncVariant v) {
  return v == SetIncVariant::kESetInc || v == SetIncVariant::kEGHD;
}
inline bool is_ghd(SetIncVariant v) {
  return v == SetIncVariant::kGHD || v == SetIncVariant::kEGHD;
}

// For GHD variants (c2, g2) are the doubled Hamming-distance center and gap.
// `bar` negates every defined value.
struct SetIncParams {
  int n = 0;
  int a = 0;
  int b = 0;
  int c2 = 0;
  int g2 = 0;
  SetIncVariant variant = SetIncVariant::kSetInc;
  bool bar = false;

  bool operator==(const SetIncParams&) const = default;
};

std::string describe(const SetIncParams& p);

// Throws ParameterError unless the two promise endpoints are achievable.
void validate(const SetIncParams& p);

// SetInc(n,a,b,c,g) <-> GHD(n,a,b,a+b-2c,2g); ESetInc <-> EGHD.
SetIncParams setinc_ghd_convert(const SetIncParams& p);

// The same function expressed over |x∧y| (SetInc or ESetInc).
SetIncParams to_intersection_form(const SetIncParams& p);

// Value at |x| = a, |y| = b, |x∧y| = k.
Value setinc_value(const SetIncParams& p, int k);

PIFunctionTable make_setinc(const SetIncParams& p);

// -1 iff |x∧y| = 0.
PIFunctionTable make_disj(int n);
// -1 iff x = y.
PIFunctionTable make_eq(int n);
// (-1)^{|x∧y|}.
PIFunctionTable make_inner_product(int n);
PIFunctionTable make_constant(int n, Value v);

}  // namespace ccx
