#include "sgat/bigint.hpp"

namespace sgat {

bool parse_natural(std::string_view text, BigInt& out) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'b' || text[1] == 'B')) {
    base = 2;
    text.remove_prefix(2);
  }
  if (text.empty()) return false;
  BigInt value = 0;
  for (char ch : text) {
    int digit = ch - '0';
    if (digit < 0 || digit >= base) return false;
    value = value * base + digit;
  }
  out = value;
  return true;
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

BigInt ceil_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if ((num % den != 0) && (num > 0)) ++q;
  return q;
}

}  // namespace sgat
