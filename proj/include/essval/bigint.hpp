#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace essval {

using BigInt = boost::multiprecision::cpp_int;

inline int sign_of(const BigInt& v) { return v.sign(); }

inline BigInt abs_of(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

/// Floor division for a positive divisor.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if ((num % den != 0) && (num < 0)) {
    --q;
  }
  return q;
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs_of(a), abs_of(b));
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  return abs_of(a) / big_gcd(a, b) * abs_of(b);
}

/// floor(sqrt(n)) for n >= 0.
inline BigInt isqrt(const BigInt& n) { return boost::multiprecision::sqrt(n); }

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace essval
