#include "ccx/bounds.hpp"
#include "ccx/errors.hpp"

namespace ccx {

std::vector<Value> symmetric_truth_table(const std::vector<Value>& predicate) {
  const int t = static_cast<int>(predicate.size()) - 1;
  if (t < 1 || t > 20) throw InputError("symmetric truth tables need 1 <= t <= 20");
  std::vector<Value> out(std::size_t{1} << t);
  for (std::uint64_t v = 0; v < out.size(); ++v) out[v] = predicate[__builtin_popcountll(v)];
  return out;
}

PartialMatrix pattern_matrix(int n, int t, const std::vector<Value>& truth) {
  if (t < 1 || n < 1 || n % t != 0) throw InputError("pattern matrix needs t dividing n");
  const int block = n / t;
  if (block < 2) throw InputError("pattern matrix needs n/t >= 2");
  if (truth.size() != (std::size_t{1} << t)) throw InputError("truth table must have 2^t entries");
  if (n > 20) throw InputError("pattern matrix exceeds the 2^20 entry cap");
  std::uint64_t selectors = 1;
  for (int j = 0; j < t; ++j) selectors *= block;
  const std::uint64_t rows = std::uint64_t{1} << n;
  const std::uint64_t cols = selectors << t;
  if (cols > kMaxPatternEntries || rows * cols > kMaxPatternEntries) {
    throw InputError("pattern matrix exceeds the 2^20 entry cap");
  }

  // Absolute index read by each selector, per block.
  std::vector<std::vector<int>> picks(selectors, std::vector<int>(t));
  for (std::uint64_t v = 0; v < selectors; ++v) {
    std::uint64_t rest = v;
    for (int j = 0; j < t; ++j) {
      picks[v][j] = j * block + static_cast<int>(rest % block);
      rest /= block;
    }
  }

  PartialMatrix out;
  out.rows = rows;
  out.cols = cols;
  out.entries.resize(rows * cols);
  for (std::uint64_t x = 0; x < rows; ++x) {
    for (std::uint64_t v = 0; v < selectors; ++v) {
      std::uint64_t proj = 0;
      for (int j = 0; j < t; ++j) proj |= ((x >> picks[v][j]) & 1) << j;
      for (std::uint64_t w = 0; w < (std::uint64_t{1} << t); ++w) {
        out.entries[x * cols + (v << t) + w] = static_cast<std::int8_t>(truth[proj ^ w]);
      }
    }
  }
  return out;
}

BitPair pattern_embedded_pair(int k, std::uint64_t row, std::uint64_t col) {
  if (k < 1 || k > 10) throw InputError("pattern embedding needs 1 <= k <= 10");
  const BitString x = bits_of_index(row, 2 * k);
  BitPair out{BitString(4 * k, 0), BitString(4 * k, 0)};
  for (int i = 0; i < 2 * k; ++i) {
    out.x[2 * i] = x[i];
    out.x[2 * i + 1] = x[i] ^ 1;
  }
  const std::uint64_t w = col & ((std::uint64_t{1} << k) - 1);
  std::uint64_t v = col >> k;
  for (int j = 0; j < k; ++j) {
    const int i = 2 * j + static_cast<int>(v % 2);
    v /= 2;
    out.y[2 * i + ((w >> j) & 1)] = 1;
  }
  return out;
}

}  // namespace ccx
