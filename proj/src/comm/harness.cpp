#include "ccx/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "ccx/errors.hpp"

namespace ccx {

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::uint64_t instance_seed(std::uint64_t trial_seed) {
  return splitmix64(trial_seed ^ 0x5bd1e9955bd1e995ULL);
}

SuccessEstimate estimate_success(const Protocol& protocol, const InstanceGenerator& generator,
                                 std::uint64_t trials, std::uint64_t master_seed,
                                 unsigned threads) {
  if (trials == 0) throw InputError("estimate_success needs at least one trial");
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

  std::atomic<std::uint64_t> next{0};
  std::mutex merge;
  std::uint64_t successes = 0, bits = 0, qubits = 0, max_bits = 0, max_qubits = 0;
  std::exception_ptr failure;

  auto worker = [&]() {
    std::uint64_t s = 0, b = 0, q = 0, mb = 0, mq = 0;
    try {
      for (std::uint64_t i = next++; i < trials; i = next++) {
        const std::uint64_t seed = derive_seed(master_seed, i);
        PublicRandomness inst_rng(instance_seed(seed));
        TrialInstance inst = generator(inst_rng, i);
        RunResult r = run_protocol(protocol, inst.x, inst.y, seed);
        s += r.output == inst.expected;
        b += r.ledger.bits_sent;
        q += r.ledger.qubits_sent;
        mb = std::max(mb, r.ledger.bits_sent);
        mq = std::max(mq, r.ledger.qubits_sent);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(merge);
      if (!failure) failure = std::current_exception();
      next = trials;
    }
    std::lock_guard<std::mutex> lock(merge);
    successes += s;
    bits += b;
    qubits += q;
    max_bits = std::max(max_bits, mb);
    max_qubits = std::max(max_qubits, mq);
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  SuccessEstimate e;
  e.trials = trials;
  e.successes = successes;
  e.rate = static_cast<double>(successes) / static_cast<double>(trials);
  e.interval = wilson_interval(successes, trials);
  e.mean_bits = static_cast<double>(bits) / static_cast<double>(trials);
  e.mean_qubits = static_cast<double>(qubits) / static_cast<double>(trials);
  e.max_bits = max_bits;
  e.max_qubits = max_qubits;
  return e;
}

}  // namespace ccx
