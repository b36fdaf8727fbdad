#include <boost/multiprecision/cpp_int.hpp>

#include "ccx/bounds.hpp"
#include "ccx/errors.hpp"

namespace ccx {

namespace {

constexpr std::uint64_t P = kFieldPrime;

inline std::uint64_t reduce(unsigned __int128 z) {
  std::uint64_t r = (static_cast<std::uint64_t>(z) & P) + static_cast<std::uint64_t>(z >> 61);
  r = (r & P) + (r >> 61);
  return r >= P ? r - P : r;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return reduce(static_cast<unsigned __int128>(a) * b);
}

std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> weight_rows(int n, int w) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
    if (__builtin_popcountll(v) == w) out.push_back(v);
  return out;
}

void check_size(const PIFunctionTable& f) {
  if (f.n() > kMaxMatrixN) {
    throw InputError("matrices are capped at n = " + std::to_string(kMaxMatrixN) + ", got n = " +
                     std::to_string(f.n()));
  }
}

std::uint64_t entry(const PIFunctionTable& f, std::uint64_t x, std::uint64_t y, Encoding e) {
  const Value v = f.at(__builtin_popcountll(x), __builtin_popcountll(y), __builtin_popcountll(x & y));
  if (!defined(v)) throw InputError("matrix entries need a total function on the chosen rows and columns");
  return encode_value(v, e);
}

}  // namespace

std::string encoding_name(Encoding e) { return e == Encoding::kPlusMinusOne ? "pm1" : "zero_one"; }

std::uint64_t encode_value(Value v, Encoding e) {
  if (e == Encoding::kZeroOne) return v == Value::kMinus ? 1 : 0;
  return v == Value::kMinus ? P - 1 : (v == Value::kPlus ? 1 : 0);
}

FieldMatrix pif_matrix(const PIFunctionTable& f, Encoding e) {
  check_size(f);
  const std::size_t size = std::size_t{1} << f.n();
  FieldMatrix m(size, size, f.name() + "/" + encoding_name(e));
  for (std::uint64_t x = 0; x < size; ++x)
    for (std::uint64_t y = 0; y < size; ++y) m.at(x, y) = entry(f, x, y, e);
  return m;
}

FieldMatrix pif_slice_matrix(const PIFunctionTable& f, int a, int b, Encoding e) {
  check_size(f);
  if (a < 0 || b < 0 || a > f.n() || b > f.n()) throw InputError("slice weights out of range");
  const auto rows = weight_rows(f.n(), a);
  const auto cols = weight_rows(f.n(), b);
  FieldMatrix m(rows.size(), cols.size(),
                f.name() + "[" + std::to_string(a) + "," + std::to_string(b) + "]/" + encoding_name(e));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m.at(i, j) = entry(f, rows[i], cols[j], e);
  return m;
}

std::size_t rank_mod_p(FieldMatrix m) {
  std::size_t rank = 0;
  std::vector<std::uint64_t> scratch(m.cols);
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    std::uint64_t* prow = &m.data[pivot * m.cols];
    if (pivot != rank) std::swap_ranges(prow, prow + m.cols, &m.data[rank * m.cols]);
    prow = &m.data[rank * m.cols];
    const std::uint64_t inv = power(prow[col], P - 2);
    for (std::size_t j = col; j < m.cols; ++j) prow[j] = mul(prow[j], inv);
    for (std::size_t r = rank + 1; r < m.rows; ++r) {
      std::uint64_t* row = &m.data[r * m.cols];
      const std::uint64_t factor = row[col];
      if (factor == 0) continue;
      const std::uint64_t neg = P - factor;
      for (std::size_t j = col; j < m.cols; ++j) {
        const std::uint64_t s = row[j] + mul(neg, prow[j]);
        row[j] = s >= P ? s - P : s;
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_rational(const FieldMatrix& m) {
  using boost::multiprecision::cpp_int;
  if (m.rows > 256 || m.cols > 256) throw InputError("rational rank is capped at 256 x 256");
  std::vector<std::vector<cpp_int>> a(m.rows, std::vector<cpp_int>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      const std::uint64_t v = m.at(i, j);
      a[i][j] = v > P / 2 ? -cpp_int(P - v) : cpp_int(v);
    }
  }
  // Bareiss: every division below is exact.
  cpp_int prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows && a[pivot][col] == 0) ++pivot;
    if (pivot == m.rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < m.rows; ++r) {
      for (std::size_t j = col + 1; j < m.cols; ++j) {
        a[r][j] = (a[rank][col] * a[r][j] - a[r][col] * a[rank][j]) / prev;
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace ccx
