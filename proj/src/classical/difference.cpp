#include <algorithm>

#include "ccx/classical.hpp"
#include "ccx/errors.hpp"

namespace ccx {

namespace {

constexpr int kMaxSampleAttempts = 64;

void require_distinct_weights(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) {
    throw InputError("inputs have lengths " + std::to_string(x.size()) + " and " +
                     std::to_string(y.size()));
  }
  if (x.empty() || weight(x) == weight(y)) {
    throw PromiseViolation("|x| != |y|", "both inputs have weight " + std::to_string(weight(x)));
  }
}

int segment_weight(const BitString& s, int lo, int hi) {
  return static_cast<int>(std::count(s.begin() + lo, s.begin() + hi, std::uint8_t{1}));
}

}  // namespace

int find_first_difference(Channel& ch, int n, const BitString* u, const BitString* v) {
  int lo = 0;
  int hi = n;
  while (hi - lo > 1) {
    const int len = hi - lo;
    const int mid = lo + len / 2;
    const auto width = static_cast<std::uint32_t>(ceil_log2(static_cast<std::uint64_t>(len) + 1));
    const std::uint64_t wa = ch.send(Party::kAlice, width, [&] {
      return static_cast<std::uint64_t>(segment_weight(*u, lo, mid));
    });
    const bool differs = ch.send_bit(Party::kBob, [&] {
      return static_cast<std::uint64_t>(segment_weight(*v, lo, mid)) != wa;
    });
    if (differs) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

int find_first_difference(const BitString& x, const BitString& y) {
  require_distinct_weights(x, y);
  InProcessTransport transport;
  PublicRandomness coins(0);
  Channel ch(transport, coins);
  return find_first_difference(ch, static_cast<int>(x.size()), &x, &y);
}

std::string accounting_name(SamplerAccounting a) {
  return a == SamplerAccounting::kMeasured ? "measured" : "idealized";
}

SamplerAccounting accounting_from_name(const std::string& name) {
  if (name == "measured" || name == "randomized") return SamplerAccounting::kMeasured;
  if (name == "idealized") return SamplerAccounting::kIdealized;
  throw InputError("unknown sampler accounting '" + name + "' (expected measured or idealized)");
}

std::uint32_t idealized_sample_bits(int n) {
  return static_cast<std::uint32_t>(2 * ceil_log2(static_cast<std::uint64_t>(n)));
}

namespace {

// Locates the first permuted position where u and v differ. Each level
// compares [lo, mid) by k public random parities: Alice sends her k parities,
// Bob answers whether all match.
int fingerprint_search(Channel& ch, int n, const std::vector<int>& perm, const BitString* u,
                       const BitString* v) {
  const int k = std::min(64, ceil_log2(static_cast<std::uint64_t>(n)) + 16);
  std::vector<std::uint64_t> masks;
  auto parities = [&](const BitString& s, int lo, int words) {
    std::uint64_t out = 0;
    for (int f = 0; f < k; ++f) {
      const std::uint64_t* m = masks.data() + static_cast<std::size_t>(f) * words;
      std::uint64_t acc = 0;
      for (int w = 0; w < words; ++w) {
        std::uint64_t bits = m[w];
        while (bits) {
          const int p = lo + w * 64 + __builtin_ctzll(bits);
          acc ^= s[perm[p]];
          bits &= bits - 1;
        }
      }
      out |= (acc & 1U) << f;
    }
    return out;
  };

  int lo = 0;
  int hi = n;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    const int len = mid - lo;
    const int words = (len + 63) / 64;
    masks.assign(static_cast<std::size_t>(k) * words, 0);
    const std::uint64_t tail = (len % 64) ? ((std::uint64_t{1} << (len % 64)) - 1) : ~std::uint64_t{0};
    for (int f = 0; f < k; ++f) {
      for (int w = 0; w < words; ++w) {
        std::uint64_t r = ch.coins().next_u64();
        if (w == words - 1) r &= tail;
        masks[static_cast<std::size_t>(f) * words + w] = r;
      }
    }
    const std::uint64_t fa = ch.send(Party::kAlice, static_cast<std::uint32_t>(k),
                                     [&] { return parities(*u, lo, words); });
    const bool equal = ch.send_bit(Party::kBob, [&] { return parities(*v, lo, words) == fa; });
    if (equal) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

int uniform_sample_difference(Channel& ch, int n, const BitString* u, const BitString* v,
                              SamplerAccounting accounting) {
  auto sample = [&]() -> int {
    const std::vector<int> perm = ch.coins().permutation(n);
    for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
      const int j = fingerprint_search(ch, n, perm, u, v);
      const bool ub = ch.send_bit(Party::kAlice, [&] { return (*u)[perm[j]] != 0; });
      const bool ok = ch.send_bit(Party::kBob, [&] { return ((*v)[perm[j]] != 0) != ub; });
      if (ok) return perm[j];
    }
    throw PromiseViolation("|x| != |y|", "no differing position found");
  };
  if (accounting == SamplerAccounting::kMeasured) return sample();
  int index;
  {
    Channel::ShadowScope shadow(ch);
    index = sample();
  }
  ch.charge_idealized(Party::kAlice, idealized_sample_bits(n));
  return index;
}

int uniform_sample_difference(const BitString& x, const BitString& y, PublicRandomness& coins,
                              SamplerAccounting accounting) {
  require_distinct_weights(x, y);
  InProcessTransport transport;
  Channel ch(transport, coins);
  return uniform_sample_difference(ch, static_cast<int>(x.size()), &x, &y, accounting);
}

}  // namespace ccx
