#include <cstdio>

#include "ccx/classical.hpp"
#include "ccx/errors.hpp"

namespace ccx {

std::string function_tag(const PIFunctionTable& f) {
  std::uint64_t h = 1469598103934665603ULL;
  const int n = f.n();
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = domain_lo(n, a, b); c <= domain_hi(a, b); ++c) {
        h ^= static_cast<std::uint8_t>(to_int(f.at(a, b, c)) + 1);
        h *= 1099511628211ULL;
      }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return (f.name().empty() ? std::string("table") : f.name()) + "#n" + std::to_string(n) + "#" + hex;
}

PIProtocol::PIProtocol(PIFunctionTable f, std::shared_ptr<const SetIncDecider> decider, std::string label)
    : f_(std::move(f)), decider_(std::move(decider)), label_(std::move(label)) {
  if (!decider_) throw InputError("PI protocol needs a SetInc decider");
}

PIProtocol::PIProtocol(PIFunctionTable f, const SetIncOptions& opt)
    : PIProtocol(std::move(f), std::make_shared<ClassicalSetIncDecider>(opt)) {}

std::string PIProtocol::descriptor() const {
  return label_ + "(" + function_tag(f_) + "," + decider_->name() + ")";
}

void PIProtocol::check_inputs(const PartyInputs& in) const {
  if (in.x && in.y && !defined(eval_pif(f_, *in.x, *in.y))) {
    throw PromiseViolation("f(x,y) defined",
                           "f is undefined at |x| = " + std::to_string(weight(*in.x)) + ", |y| = " +
                               std::to_string(weight(*in.y)) + ", |x∧y| = " +
                               std::to_string(and_weight(*in.x, *in.y)));
  }
}

int PIProtocol::execute(Channel& ch, const PartyInputs& in) const {
  const int n = f_.n();
  const auto w = static_cast<std::uint32_t>(ceil_log2(static_cast<std::uint64_t>(n) + 1));
  const int a = static_cast<int>(ch.send(Party::kAlice, w, [&] { return std::uint64_t(weight(*in.x)); }));
  const int b = static_cast<int>(ch.send(Party::kBob, w, [&] { return std::uint64_t(weight(*in.y)); }));
  if (a > n || b > n) throw TransportError("peer announced a weight above n");

  const SliceFunction slice = derive_slice(f_, a, b);
  const std::vector<Jump> js = jumps(slice);
  const std::vector<Interval> ivs = intervals(slice, js);
  int lo = 0;
  int hi = static_cast<int>(js.size());
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    const Jump& j = js[mid - 1];
    SetIncParams p;
    p.n = n;
    p.a = a;
    p.b = b;
    p.c2 = j.c2;
    p.g2 = j.g2;
    if (decider_->decide(ch, p, in) < 0) {
      hi = mid - 1;
    } else {
      lo = mid;
    }
  }
  const Value v = slice.first_defined(ivs[lo].lo, ivs[lo].hi);
  if (!defined(v)) {
    throw PromiseViolation("f(x,y) defined",
                           "the slice at |x| = " + std::to_string(a) + ", |y| = " + std::to_string(b) +
                               " has no defined value");
  }
  return to_int(v);
}

}  // namespace ccx
