#include "ccx/classical.hpp"
#include "ccx/errors.hpp"

namespace ccx {

namespace {
constexpr int kMaxDeterministicN = 64;

std::uint32_t rank_width(int n, int w) {
  return static_cast<std::uint32_t>(ceil_log2(binomial_coefficient(n, w)));
}
}  // namespace

std::uint64_t deterministic_cost(const PIFunctionTable& f, int a, int b) {
  const int n = f.n();
  const std::uint64_t weights = 2ULL * ceil_log2(static_cast<std::uint64_t>(n) + 1);
  if (!derive_slice(f, a, b).non_trivial()) return weights;
  return weights + std::min(rank_width(n, a), rank_width(n, b)) + 1;
}

DeterministicTotalProtocol::DeterministicTotalProtocol(PIFunctionTable f) : f_(std::move(f)) {
  if (f_.n() > kMaxDeterministicN) {
    throw InputError("deterministic protocol supports n <= " + std::to_string(kMaxDeterministicN));
  }
  if (!f_.is_total()) throw InputError("deterministic protocol needs a total function");
}

std::string DeterministicTotalProtocol::descriptor() const { return "det-total(" + function_tag(f_) + ")"; }

void DeterministicTotalProtocol::check_inputs(const PartyInputs&) const {}

int DeterministicTotalProtocol::execute(Channel& ch, const PartyInputs& in) const {
  const int n = f_.n();
  const auto w = static_cast<std::uint32_t>(ceil_log2(static_cast<std::uint64_t>(n) + 1));
  const int a = static_cast<int>(ch.send(Party::kAlice, w, [&] { return std::uint64_t(weight(*in.x)); }));
  const int b = static_cast<int>(ch.send(Party::kBob, w, [&] { return std::uint64_t(weight(*in.y)); }));
  if (a > n || b > n) throw TransportError("peer announced a weight above n");
  const SliceFunction slice = derive_slice(f_, a, b);
  if (!slice.non_trivial()) return to_int(slice.first_defined(slice.lo, slice.hi));

  const bool alice_sends = binomial_coefficient(n, a) <= binomial_coefficient(n, b);
  const Party sender = alice_sends ? Party::kAlice : Party::kBob;
  const int sent_weight = alice_sends ? a : b;
  const std::uint64_t rank = ch.send(sender, rank_width(n, sent_weight),
                                     [&] { return combinadic_rank(in.of(sender)); });
  return ch.send_answer(other(sender), [&] {
    const BitString revealed = combinadic_unrank(rank, n, sent_weight);
    return to_int(slice.at(and_weight(revealed, in.of(other(sender)))));
  });
}

}  // namespace ccx
