#include <algorithm>
#include <array>
#include <cmath>

#include "ccx/bounds.hpp"
#include "ccx/errors.hpp"

namespace ccx {

namespace {

SetIncParams esetinc(int n, int a, int b, int c2, int g2, bool bar) {
  SetIncParams p;
  p.n = n;
  p.a = a;
  p.b = b;
  p.c2 = c2;
  p.g2 = g2;
  p.variant = SetIncVariant::kESetInc;
  p.bar = bar;
  return p;
}

// Doubled joint-type cells {c, a-c, b-c, n-a-b+c}.
std::array<int, 4> cells2(const SetIncParams& p) {
  return {p.c2, 2 * p.a - p.c2, 2 * p.b - p.c2, 2 * (p.n - p.a - p.b) + p.c2};
}

bool is_pad(StepKind k) {
  return k == StepKind::kPad || k == StepKind::kNormalizeN1N2 || k == StepKind::kCase1 ||
         k == StepKind::kCase2 || k == StepKind::kCase3;
}

SetIncParams pad_params(const SetIncParams& p, const PadLengths& pad) {
  if (pad.l1 < 0 || pad.l2 < 0 || pad.l3 < 0 || pad.l1 + pad.l2 + pad.l3 > pad.l) {
    throw InputError("pad lengths need l1, l2, l3 >= 0 and l1 + l2 + l3 <= l");
  }
  SetIncParams out = p;
  out.n += pad.l;
  out.a += pad.l1 + pad.l3;
  out.b += pad.l2 + pad.l3;
  out.c2 += 2 * pad.l3;
  return out;
}

BitPair pad_inputs(const BitPair& in, const PadLengths& pad) {
  const int zeros = pad.l - pad.l1 - pad.l2 - pad.l3;
  BitPair out = in;
  auto append = [](BitString& s, int count, std::uint8_t bit) { s.insert(s.end(), count, bit); };
  append(out.x, pad.l1, 1);
  append(out.y, pad.l1, 0);
  append(out.x, pad.l2, 0);
  append(out.y, pad.l2, 1);
  append(out.x, pad.l3, 1);
  append(out.y, pad.l3, 1);
  append(out.x, zeros, 0);
  append(out.y, zeros, 0);
  return out;
}

SetIncParams repeat_params(const SetIncParams& p, int k) {
  if (k < 1) throw InputError("repeat count must be at least 1");
  SetIncParams out = p;
  out.n *= k;
  out.a *= k;
  out.b *= k;
  out.c2 *= k;
  out.g2 *= k;
  return out;
}

SideCondition le(const char* name, std::int64_t lhs, std::int64_t rhs) { return {name, lhs, rhs, false}; }
SideCondition eq(const char* name, std::int64_t lhs, std::int64_t rhs) { return {name, lhs, rhs, true}; }

}  // namespace

std::string step_name(StepKind k) {
  switch (k) {
    case StepKind::kPad:
      return "pad";
    case StepKind::kComplementBob:
      return "complement_bob";
    case StepKind::kComplementAlice:
      return "complement_alice";
    case StepKind::kRepeat:
      return "repeat";
    case StepKind::kNormalizeN1N2:
      return "normalize_n1n2";
    case StepKind::kHalveToHalfInteger:
      return "halve_to_half_integer";
    case StepKind::kCase1:
      return "case1";
    case StepKind::kCase2:
      return "case2";
    case StepKind::kCase3:
      return "case3";
  }
  return "unknown";
}

TransformResult reduction_transform(StepKind kind, const SetIncParams& params, const StepArgs& args,
                                    const std::optional<BitPair>& inputs) {
  SetIncParams p = to_intersection_form(params);
  validate(p);
  if (inputs && (static_cast<int>(inputs->x.size()) != p.n || static_cast<int>(inputs->y.size()) != p.n)) {
    throw InputError("transform inputs must have length n");
  }
  TransformResult out;
  std::optional<BitPair> in = inputs;
  if (is_pad(kind)) {
    out.params = pad_params(p, args.pad);
    if (in) out.inputs = pad_inputs(*in, args.pad);
  } else if (kind == StepKind::kComplementBob) {
    out.params = p;
    out.params.b = p.n - p.b;
    out.params.c2 = 2 * p.a - p.c2;
    out.params.bar = !p.bar;
    if (in) out.inputs = BitPair{in->x, complement(in->y)};
  } else if (kind == StepKind::kComplementAlice) {
    out.params = p;
    out.params.a = p.n - p.a;
    out.params.c2 = 2 * p.b - p.c2;
    out.params.bar = !p.bar;
    if (in) out.inputs = BitPair{complement(in->x), in->y};
  } else if (kind == StepKind::kRepeat) {
    out.params = repeat_params(p, args.repeat);
    if (in) out.inputs = BitPair{repeat(in->x, args.repeat), repeat(in->y, args.repeat)};
  } else {  // kHalveToHalfInteger
    out.params = pad_params(repeat_params(p, args.repeat), args.pad);
    if (in) {
      out.inputs = pad_inputs(BitPair{repeat(in->x, args.repeat), repeat(in->y, args.repeat)}, args.pad);
    }
  }
  validate(out.params);
  return out;
}

Certificate esetinc_lower_certificate(const SetIncParams& p) {
  SetIncParams cur = to_intersection_form(p);
  cur.variant = SetIncVariant::kESetInc;
  validate(cur);

  Certificate cert;
  cert.source = cur;
  const int g2 = cur.g2;

  // Move a smallest cell to x∧y.
  std::array<int, 4> cells = cells2(cur);
  const int idx = static_cast<int>(std::min_element(cells.begin(), cells.end()) - cells.begin());
  auto complement_step = [&](StepKind kind) {
    ReductionStep s;
    s.kind = kind;
    s.from = cur;
    s.to = reduction_transform(kind, cur, {}).params;
    cert.steps.push_back(s);
    cur = s.to;
  };
  if (idx == 1 || idx == 3) complement_step(StepKind::kComplementBob);
  if (idx == 2 || idx == 3) complement_step(StepKind::kComplementAlice);

  cells = cells2(cur);
  std::array<int, 4> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  const int n1 = cells[0];
  const int n2 = sorted[1];
  cert.n1_2 = n1;
  cert.n2_2 = n2;

  {
    ReductionStep s;
    s.kind = StepKind::kNormalizeN1N2;
    s.from = cur;
    s.to = esetinc((n1 + 3 * n2) / 2, (n1 + n2) / 2, (n1 + n2) / 2, n1, g2, cur.bar);
    s.args.pad = {(cells[1] - n2) / 2, (cells[2] - n2) / 2, 0, 0};
    s.args.pad.l = s.args.pad.l1 + s.args.pad.l2 + (cells[3] - n2) / 2;
    s.side_conditions = {le("n1 <= n2", n1, n2), eq("n1 sits at x∧y", cells[0], sorted[0]),
                         le("n2 <= |x ∧ ȳ|", n2, cells[1]), le("n2 <= |x̄ ∧ y|", n2, cells[2]),
                         le("n2 <= |x̄ ∧ ȳ|", n2, cells[3])};
    cert.steps.push_back(s);
    cur = s.to;
  }

  // m_i = floor(n_i/(2g) + 1/2) - 1/2, doubled.
  const int m1 = 2 * ((n1 + g2) / (2 * g2)) - 1;
  const int m2 = 2 * ((n2 + g2) / (2 * g2)) - 1;
  cert.m1_2 = m1;
  cert.m2_2 = m2;
  const SetIncParams half = esetinc((m1 + 3 * m2) / 2, (m1 + m2) / 2, (m1 + m2) / 2, m1, 1, cur.bar);
  {
    ReductionStep s;
    s.kind = StepKind::kHalveToHalfInteger;
    s.from = cur;
    s.to = half;
    s.args.repeat = g2;
    const int pad_c = (n1 - g2 * m1) / 2;
    const int pad_rest = (n2 - g2 * m2) / 2;
    s.args.pad = {pad_rest, pad_rest, pad_c, pad_c + 3 * pad_rest};
    s.side_conditions = {le("m1 >= 1/2", 1, m1),
                         le("m1 <= m2", m1, m2),
                         le("m1 <= n1/(2g)", static_cast<std::int64_t>(g2) * m1, n1),
                         le("m1 + 1 > n1/(2g)", n1 + 1, static_cast<std::int64_t>(g2) * (m1 + 2)),
                         le("m2 <= n2/(2g)", static_cast<std::int64_t>(g2) * m2, n2),
                         le("m2 + 1 > n2/(2g)", n2 + 1, static_cast<std::int64_t>(g2) * (m2 + 2)),
                         eq("x∧y pad is an integer", (n1 - g2 * m1) % 2, 0),
                         eq("other pads are integers", (n2 - g2 * m2) % 2, 0)};
    cert.steps.push_back(s);
    cur = half;
  }

  ReductionStep s;
  s.from = half;
  if (m1 == 1 && m2 == 1) {
    cert.case_id = 1;
    s.kind = StepKind::kCase1;
    s.to = half;
    s.side_conditions = {eq("m1 = 1/2", m1, 1), eq("m2 = 1/2", m2, 1)};
    cert.terminal_value = std::sqrt(m1 * m2 / 4.0);
  } else if (m1 == 1) {
    cert.case_id = 2;
    s.kind = StepKind::kCase2;
    const int mp = (m1 + m2) / 4;  // floor((m1 + m2)/2)
    const int l1 = (m1 + m2) / 2 - 2 * mp;
    const int l2 = (m1 + m2) / 2 - mp;
    const int l = (m1 + 3 * m2) / 2 - 4 * mp;
    s.to = esetinc(4 * mp, 2 * mp, mp, m1, 1, cur.bar);
    s.args.pad = {l1, l2, 0, l};
    s.side_conditions = {le("m2 >= 3/2", 3, m2),
                         eq("l - (l1+l2) = m2 - m1 - m2'", 2 * (l - l1 - l2), m2 - m1 - 2 * mp),
                         le("l1 + l2 <= l", l1 + l2, l),
                         le("l1 >= 0", 0, l1),
                         le("l2 >= 0", 0, l2),
                         eq("terminal l is a half-integer", m1 % 2, 1),
                         le("terminal l > 0", 1, m1),
                         le("terminal l <= k/2", m1, mp)};
    cert.terminal_k = mp;
    cert.terminal_l2 = m1;
  } else {
    cert.case_id = 3;
    s.kind = StepKind::kCase3;
    const int m = (m1 + 3 * m2) / 12;          // floor(m1/6 + m2/2)
    const int k = 2 * ((m1 + 3) / 6) - 1;      // floor(m1/3 + 1/2) - 1/2, doubled
    const int l3 = (m1 - k) / 2;
    const int l1 = (m1 + m2) / 2 - 2 * m - l3;
    const int l2 = (m1 + m2) / 2 - m - l3;
    const int l = (m1 + 3 * m2) / 2 - 4 * m;
    s.to = esetinc(4 * m, 2 * m, m, k, 1, cur.bar);
    s.args.pad = {l1, l2, l3, l};
    s.side_conditions = {le("m1 >= 3/2", 3, m1),
                         le("k <= floor(2 m1/3)/2", k, m1 / 3),
                         le("floor(2 m1/3) <= m", m1 / 3, m),
                         le("eq:m1m k <= m/2", k, m),
                         eq("eq:ll_com l - (l1+l2+l3) = m2 - k - m", 2 * (l - l1 - l2 - l3), m2 - k - 2 * m),
                         le("eq:ll_com l1 + l2 + l3 <= l", l1 + l2 + l3, l),
                         le("l1 >= 0", 0, l1),
                         le("l2 >= 0", 0, l2),
                         le("l3 >= 0", 0, l3),
                         eq("terminal l is a half-integer", k % 2, 1),
                         le("terminal l > 0", 1, k),
                         le("terminal l <= k/2", k, m)};
    cert.terminal_k = m;
    cert.terminal_l2 = k;
  }
  cert.steps.push_back(s);
  cert.terminal = s.to;
  if (cert.case_id != 1) cert.terminal_value = std::sqrt(cert.terminal_k * cert.terminal_l2 / 2.0);
  cert.reported_bound = std::sqrt(static_cast<double>(n1) * n2) / g2;

  for (const ReductionStep& step : cert.steps) {
    for (const SideCondition& c : step.side_conditions) {
      if (!c.holds()) {
        throw InvariantError(std::string("side condition '") + c.name + "' failed in step " +
                             step_name(step.kind) + " for " + describe(cert.source));
      }
    }
    if (reduction_transform(step.kind, step.to, step.args).params != step.from) {
      throw InvariantError("step " + step_name(step.kind) + " does not map " + describe(step.to) +
                           " onto " + describe(step.from));
    }
  }
  return cert;
}

std::vector<SideCondition> all_side_conditions(const Certificate& cert) {
  std::vector<SideCondition> out;
  for (const ReductionStep& s : cert.steps) out.insert(out.end(), s.side_conditions.begin(), s.side_conditions.end());
  return out;
}

}  // namespace ccx
