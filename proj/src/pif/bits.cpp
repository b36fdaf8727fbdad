#include "ccx/bits.hpp"

#include "ccx/errors.hpp"

namespace ccx {

BitString parse_bits(std::string_view text) {
  BitString out;
  out.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw InputError("bit string may contain only '0' and '1', got '" + std::string(text) + "'");
    }
    out.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return out;
}

std::string to_string(const BitString& x) {
  std::string out;
  out.reserve(x.size());
  for (auto bit : x) out.push_back(bit ? '1' : '0');
  return out;
}

int weight(const BitString& x) {
  int w = 0;
  for (auto bit : x) w += bit;
  return w;
}

int and_weight(const BitString& x, const BitString& y) {
  int w = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) w += x[i] & y[i];
  return w;
}

int hamming_distance(const BitString& x, const BitString& y) {
  int w = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) w += x[i] ^ y[i];
  return w;
}

BitString complement(const BitString& x) {
  BitString out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] ^ 1;
  return out;
}

BitString concat(const BitString& x, const BitString& y) {
  BitString out(x);
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

BitString repeat(const BitString& x, int times) {
  BitString out;
  out.reserve(x.size() * static_cast<std::size_t>(times > 0 ? times : 0));
  for (int i = 0; i < times; ++i) out.insert(out.end(), x.begin(), x.end());
  return out;
}

BitString constant_bits(int length, std::uint8_t bit) {
  return BitString(static_cast<std::size_t>(length), bit);
}

BitString bits_of_index(std::uint64_t value, int n) {
  BitString out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>((value >> i) & 1U);
  return out;
}

BitPair canonical_pair(int n, int a, int b, int k) {
  if (k < 0 || k > a || k > b || a + b - k > n) {
    throw ParameterError("no pair with n=" + std::to_string(n) + " a=" + std::to_string(a) +
                         " b=" + std::to_string(b) + " |x∧y|=" + std::to_string(k));
  }
  BitPair p{BitString(n, 0), BitString(n, 0)};
  for (int i = 0; i < k; ++i) p.x[i] = p.y[i] = 1;
  for (int i = k; i < a; ++i) p.x[i] = 1;
  for (int i = a; i < a + b - k; ++i) p.y[i] = 1;
  return p;
}

int ceil_log2(std::uint64_t v) {
  int bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < v) ++bits;
  return bits;
}

}  // namespace ccx
