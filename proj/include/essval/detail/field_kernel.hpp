#pragma once

// Integer-only primitives on (a + b*sqrt(d)) / c, shared by RealValue and the
// hot loops in cocycle/partition/essential_values. Instantiated for BigInt and
// for __int128 when the caller has proven its coefficients are small enough.

#include <cmath>
#include <cstdint>

#include "essval/bigint.hpp"

namespace essval::detail {

using Int128 = __int128;

inline int sgn(const Int128& v) { return (v > 0) - (v < 0); }
inline int sgn(const BigInt& v) { return v.sign(); }

inline Int128 isqrt_of(const Int128& n) {
  auto r = static_cast<Int128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) {
    --r;
  }
  while ((r + 1) * (r + 1) <= n) {
    ++r;
  }
  return r;
}
inline BigInt isqrt_of(const BigInt& n) { return isqrt(n); }

template <class Int>
Int floor_div_of(const Int& num, const Int& den) {
  Int q = num / den;
  if ((num % den != 0) && (num < 0)) {
    --q;
  }
  return q;
}

/// Sign of a + b*sqrt(d), d >= 0 and not a perfect square unless b == 0.
template <class Int>
int surd_sign(const Int& a, const Int& b, const Int& d) {
  const int sa = sgn(a);
  const int sb = (d == 0) ? 0 : sgn(b);
  if (sb == 0) {
    return sa;
  }
  if (sa == 0 || sa == sb) {
    return sb;
  }
  // Opposite signs: compare a^2 with b^2 d.
  const Int lhs = a * a;
  const Int rhs = b * b * d;
  if (lhs == rhs) {
    return 0;
  }
  return (lhs > rhs) ? sa : sb;
}

/// floor(b * sqrt(d)).
template <class Int>
Int floor_b_sqrt_d(const Int& b, const Int& d) {
  if (b == 0 || d == 0) {
    return Int(0);
  }
  const Int n = b * b * d;
  const Int r = isqrt_of(n);
  if (b > 0) {
    return r;
  }
  return (r * r == n) ? Int(-r) : Int(-r - 1);
}

/// floor((a + b*sqrt(d)) / c) for c > 0. Uses floor(y / c) = floor(floor(y) / c).
template <class Int>
Int floor_surd(const Int& a, const Int& b, const Int& c, const Int& d) {
  return floor_div_of<Int>(a + floor_b_sqrt_d<Int>(b, d), c);
}

}  // namespace essval::detail
