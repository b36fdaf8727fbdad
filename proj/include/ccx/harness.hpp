#pragma once

#include <cstdint>
#include <functional>

#include "ccx/comm.hpp"

namespace ccx {

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = kWilsonZ95);

struct TrialInstance {
  BitString x;
  BitString y;
  int expected = 0;  // -1 or +1
};

// Draws an instance from the trial's private generator stream.
using InstanceGenerator = std::function<TrialInstance(PublicRandomness& rng, std::uint64_t index)>;

struct SuccessEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double rate = 0.0;
  WilsonInterval interval;
  double mean_bits = 0.0;
  double mean_qubits = 0.0;
  std::uint64_t max_bits = 0;
  std::uint64_t max_qubits = 0;
};

// Trial i runs the protocol with seed derive_seed(master_seed, i); its instance
// comes from a separate stream derived from that seed. threads = 0 uses the
// hardware concurrency.
SuccessEstimate estimate_success(const Protocol& protocol, const InstanceGenerator& generator,
                                 std::uint64_t trials, std::uint64_t master_seed,
                                 unsigned threads = 0);

std::uint64_t instance_seed(std::uint64_t trial_seed);

}  // namespace ccx
