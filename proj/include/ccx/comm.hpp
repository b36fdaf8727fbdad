#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ccx/bits.hpp"

namespace ccx {

std::uint64_t splitmix64(std::uint64_t x);

// Seed for item `index` under `master`; order-independent and collision-resistant
// enough for trial streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Shared coin stream. All draws use only the raw 64-bit engine output, so the
// sequence is fixed by the seed alone (no implementation-defined distributions).
class PublicRandomness {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/splitmix64-seeded/ccx-v1";

  explicit PublicRandomness(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64();
  // Uniform in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1) with 53 random bits.
  double uniform01();
  bool bernoulli(double p);
  // Uniform permutation of 0..n-1 (Fisher-Yates).
  std::vector<int> permutation(int n);
  // Exact Binomial(trials, p) by inversion with a single uniform draw.
  std::uint64_t binomial(std::uint64_t trials, double p);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Binomial(trials, p) as a deterministic function of one uniform u in [0, 1).
std::uint64_t binomial_from_uniform(std::uint64_t trials, double p, double u);

enum class Party : std::uint8_t { kAlice = 0, kBob = 1 };

inline Party other(Party p) { return p == Party::kAlice ? Party::kBob : Party::kAlice; }
std::string party_name(Party p);

// kAnswer is a classical bit returning the output to the other party.
// kQuantum and kIdealized entries are charged but never cross a transport.
enum class MessageKind : std::uint8_t { kClassical, kAnswer, kQuantum, kIdealized };

std::string kind_name(MessageKind k);
inline bool is_transported(MessageKind k) {
  return k == MessageKind::kClassical || k == MessageKind::kAnswer;
}

struct Message {
  Party sender = Party::kAlice;
  MessageKind kind = MessageKind::kClassical;
  std::uint32_t width = 0;
  std::uint64_t payload = 0;
  std::uint32_t repeat = 1;  // identical register transfers folded into one entry
  bool charged = true;       // false inside an idealized (shadow) scope

  bool operator==(const Message&) const = default;
};

using Transcript = std::vector<Message>;

struct LedgerEntry {
  Party sender = Party::kAlice;
  std::uint32_t width = 0;
  MessageKind kind = MessageKind::kClassical;
  std::uint32_t repeat = 1;

  bool operator==(const LedgerEntry&) const = default;
};

// bits_sent covers classical, answer and idealized charges; answer_bits is the
// answer-bit part of it.
struct CostLedger {
  std::uint64_t bits_sent = 0;
  std::uint64_t answer_bits = 0;
  std::uint64_t qubits_sent = 0;
  std::uint64_t rounds = 0;
  std::vector<LedgerEntry> messages;

  void add(const Message& m);
  bool operator==(const CostLedger&) const = default;
};

CostLedger ledger_from_transcript(const Transcript& t);

class Transport {
 public:
  using Producer = std::function<std::uint64_t()>;
  virtual ~Transport() = default;
  // Moves one classical message of `width` bits from `from`. `produce` is
  // invoked only in the process that holds `from`'s input.
  virtual std::uint64_t carry(Party from, std::uint32_t width, const Producer& produce) = 0;
  virtual bool carries_quantum() const = 0;
};

class InProcessTransport : public Transport {
 public:
  std::uint64_t carry(Party from, std::uint32_t width, const Producer& produce) override;
  bool carries_quantum() const override { return true; }
};

// Feeds recorded payloads back in order; never calls producers.
class ReplayTransport : public Transport {
 public:
  explicit ReplayTransport(const Transcript& t);
  std::uint64_t carry(Party from, std::uint32_t width, const Producer& produce) override;
  bool carries_quantum() const override { return true; }

 private:
  std::vector<Message> queue_;
  std::size_t next_ = 0;
};

class Channel {
 public:
  using Producer = Transport::Producer;

  Channel(Transport& transport, PublicRandomness& coins);

  PublicRandomness& coins() { return coins_; }

  std::uint64_t send(Party from, std::uint32_t width, const Producer& produce);
  bool send_bit(Party from, const std::function<bool()>& produce);
  // One answer bit carrying a -1/+1 output.
  int send_answer(Party from, const std::function<int()>& produce);
  void send_qubits(Party from, std::uint32_t width, std::uint32_t repeat = 1);
  void charge_idealized(Party from, std::uint32_t width);

  // While alive, messages still flow but are recorded uncharged.
  class ShadowScope {
   public:
    explicit ShadowScope(Channel& ch) : ch_(ch) { ++ch_.shadow_depth_; }
    ~ShadowScope() { --ch_.shadow_depth_; }
    ShadowScope(const ShadowScope&) = delete;
    ShadowScope& operator=(const ShadowScope&) = delete;

   private:
    Channel& ch_;
  };

  const CostLedger& ledger() const { return ledger_; }
  const Transcript& transcript() const { return transcript_; }

 private:
  void record(const Message& m);

  Transport& transport_;
  PublicRandomness& coins_;
  CostLedger ledger_;
  Transcript transcript_;
  int shadow_depth_ = 0;
};

// Inputs present in this process. In-process runs hold both.
struct PartyInputs {
  int n = 0;
  std::optional<BitString> x;
  std::optional<BitString> y;

  const BitString& alice() const;
  const BitString& bob() const;
  const BitString& of(Party p) const { return p == Party::kAlice ? alice() : bob(); }
};

// A two-party protocol script. Both parties run execute() in lockstep; control
// flow may depend only on public parameters, coins and received messages, and
// private data is touched only inside producers.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual std::string descriptor() const = 0;
  virtual int input_length() const = 0;
  virtual bool uses_quantum() const { return false; }
  // Throws PromiseViolation for whatever part of the promise the present inputs can show.
  virtual void check_inputs(const PartyInputs& in) const = 0;
  // Returns -1 or +1.
  virtual int execute(Channel& ch, const PartyInputs& in) const = 0;
};

struct RunResult {
  int output = 0;
  CostLedger ledger;
  Transcript transcript;
  std::uint64_t seed = 0;
  std::string rng_algorithm;

  bool operator==(const RunResult&) const = default;
};

void check_lengths(const Protocol& protocol, const PartyInputs& in);

RunResult run_protocol(const Protocol& protocol, const BitString& x, const BitString& y,
                       std::uint64_t seed);
RunResult run_with_transport(const Protocol& protocol, Transport& transport,
                             const PartyInputs& inputs, std::uint64_t seed);

// Re-executes without inputs, feeding the recorded messages.
int replay(const Protocol& protocol, const Transcript& transcript, std::uint64_t seed);

}  // namespace ccx
