#include "ccx/comm.hpp"
#include "ccx/errors.hpp"

namespace ccx {

std::string party_name(Party p) { return p == Party::kAlice ? "alice" : "bob"; }

std::string kind_name(MessageKind k) {
  switch (k) {
    case MessageKind::kClassical:
      return "classical";
    case MessageKind::kAnswer:
      return "answer";
    case MessageKind::kQuantum:
      return "quantum";
    case MessageKind::kIdealized:
      return "idealized";
  }
  return "?";
}

void CostLedger::add(const Message& m) {
  if (!m.charged) return;
  const std::uint64_t amount = static_cast<std::uint64_t>(m.width) * m.repeat;
  if (m.kind == MessageKind::kQuantum) {
    qubits_sent += amount;
  } else {
    bits_sent += amount;
    if (m.kind == MessageKind::kAnswer) answer_bits += amount;
  }
  if (messages.empty() || messages.back().sender != m.sender) ++rounds;
  messages.push_back({m.sender, m.width, m.kind, m.repeat});
}

CostLedger ledger_from_transcript(const Transcript& t) {
  CostLedger ledger;
  for (const Message& m : t) ledger.add(m);
  return ledger;
}

std::uint64_t InProcessTransport::carry(Party, std::uint32_t, const Producer& produce) {
  return produce();
}

ReplayTransport::ReplayTransport(const Transcript& t) {
  for (const Message& m : t)
    if (is_transported(m.kind)) queue_.push_back(m);
}

std::uint64_t ReplayTransport::carry(Party from, std::uint32_t width, const Producer&) {
  if (next_ >= queue_.size()) throw TransportError("replay transcript exhausted");
  const Message& m = queue_[next_++];
  if (m.sender != from || m.width != width) {
    throw TransportError("replay transcript diverged at message " + std::to_string(next_ - 1));
  }
  return m.payload;
}

Channel::Channel(Transport& transport, PublicRandomness& coins)
    : transport_(transport), coins_(coins) {}

void Channel::record(const Message& m) {
  transcript_.push_back(m);
  ledger_.add(m);
}

std::uint64_t Channel::send(Party from, std::uint32_t width, const Producer& produce) {
  if (width == 0) return 0;
  if (width > 64) throw InvariantError("classical messages are limited to 64 bits");
  auto checked = [&]() {
    std::uint64_t v = produce();
    if (width < 64 && (v >> width) != 0) {
      throw InvariantError("payload " + std::to_string(v) + " does not fit in " +
                           std::to_string(width) + " bits");
    }
    return v;
  };
  const std::uint64_t payload = transport_.carry(from, width, checked);
  record({from, MessageKind::kClassical, width, payload, 1, shadow_depth_ == 0});
  return payload;
}

bool Channel::send_bit(Party from, const std::function<bool()>& produce) {
  return send(from, 1, [&] { return std::uint64_t{produce() ? 1U : 0U}; }) != 0;
}

int Channel::send_answer(Party from, const std::function<int()>& produce) {
  auto encode = [&]() -> std::uint64_t {
    int v = produce();
    if (v != 1 && v != -1) throw InvariantError("answer must be -1 or +1");
    return v == 1 ? 1 : 0;
  };
  const std::uint64_t payload = transport_.carry(from, 1, encode);
  record({from, MessageKind::kAnswer, 1, payload, 1, shadow_depth_ == 0});
  return payload ? 1 : -1;
}

void Channel::send_qubits(Party from, std::uint32_t width, std::uint32_t repeat) {
  if (!transport_.carries_quantum()) {
    throw TransportError("quantum registers cannot traverse this transport");
  }
  if (width == 0 || repeat == 0) return;
  record({from, MessageKind::kQuantum, width, 0, repeat, shadow_depth_ == 0});
}

void Channel::charge_idealized(Party from, std::uint32_t width) {
  if (width == 0) return;
  record({from, MessageKind::kIdealized, width, 0, 1, true});
}

const BitString& PartyInputs::alice() const {
  if (!x) throw InvariantError("Alice's input is not held by this process");
  return *x;
}

const BitString& PartyInputs::bob() const {
  if (!y) throw InvariantError("Bob's input is not held by this process");
  return *y;
}

void check_lengths(const Protocol& protocol, const PartyInputs& in) {
  const auto n = static_cast<std::size_t>(protocol.input_length());
  if (in.x && in.x->size() != n) {
    throw InputError("x has length " + std::to_string(in.x->size()) + ", protocol expects " +
                     std::to_string(n));
  }
  if (in.y && in.y->size() != n) {
    throw InputError("y has length " + std::to_string(in.y->size()) + ", protocol expects " +
                     std::to_string(n));
  }
}

RunResult run_with_transport(const Protocol& protocol, Transport& transport,
                             const PartyInputs& inputs, std::uint64_t seed) {
  check_lengths(protocol, inputs);
  protocol.check_inputs(inputs);
  PublicRandomness coins(seed);
  Channel ch(transport, coins);
  RunResult r;
  r.output = protocol.execute(ch, inputs);
  if (r.output != 1 && r.output != -1) throw InvariantError("protocol produced no -1/+1 output");
  r.ledger = ch.ledger();
  r.transcript = ch.transcript();
  r.seed = seed;
  r.rng_algorithm = PublicRandomness::kAlgorithm;
  return r;
}

RunResult run_protocol(const Protocol& protocol, const BitString& x, const BitString& y,
                       std::uint64_t seed) {
  InProcessTransport transport;
  PartyInputs in{protocol.input_length(), x, y};
  return run_with_transport(protocol, transport, in, seed);
}

int replay(const Protocol& protocol, const Transcript& transcript, std::uint64_t seed) {
  ReplayTransport transport(transcript);
  PublicRandomness coins(seed);
  Channel ch(transport, coins);
  PartyInputs none{protocol.input_length(), std::nullopt, std::nullopt};
  return protocol.execute(ch, none);
}

}  // namespace ccx
