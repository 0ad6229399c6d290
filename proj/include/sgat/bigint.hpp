#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace sgat {

using BigInt = boost::multiprecision::cpp_int;

/// Performance guarantees are small exact fractions.
using Ratio = boost::rational<std::int64_t>;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Ratio& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses a non-negative decimal or `0b`-prefixed binary numeral. Returns false
/// on malformed input.
bool parse_natural(std::string_view text, BigInt& out);

/// value >= ratio * reference, exactly.
inline bool at_least(const BigInt& value, const Ratio& ratio, const BigInt& reference) {
  return value * ratio.denominator() >= reference * ratio.numerator();
}

/// value <= ratio * reference, exactly.
inline bool at_most(const BigInt& value, const Ratio& ratio, const BigInt& reference) {
  return value * ratio.denominator() <= reference * ratio.numerator();
}

/// Floor and ceiling division for possibly negative numerators; den > 0.
BigInt floor_div(const BigInt& num, const BigInt& den);
BigInt ceil_div(const BigInt& num, const BigInt& den);

}  // namespace sgat
