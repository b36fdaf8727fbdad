#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ccx {

// Index 0 is the leftmost character of the textual form.
using BitString = std::vector<std::uint8_t>;

BitString parse_bits(std::string_view text);
std::string to_string(const BitString& x);

int weight(const BitString& x);
int and_weight(const BitString& x, const BitString& y);
int hamming_distance(const BitString& x, const BitString& y);
BitString complement(const BitString& x);
BitString concat(const BitString& x, const BitString& y);
BitString repeat(const BitString& x, int times);
BitString constant_bits(int length, std::uint8_t bit);

// Bits of `value` at positions 0..n-1, bit i of the integer at index i.
BitString bits_of_index(std::uint64_t value, int n);

// A pair with |x| = a, |y| = b, |x∧y| = k laid out as 1^k on both, then
// x-only ones, then y-only ones, then zeros.
struct BitPair {
  BitString x;
  BitString y;
};
BitPair canonical_pair(int n, int a, int b, int k);

int ceil_log2(std::uint64_t v);

}  // namespace ccx
