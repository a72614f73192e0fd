#pragma once

// A Frame fixes a common denominator and radicand so that every point of a
// computation is a pair (a, b) meaning (a + b*sqrt(d)) / den. Addition is then
// coefficient-wise and equality is coefficient equality, which keeps the hot
// loops free of gcd normalisation. Frames exist for BigInt and, when the
// caller's growth bound allows it, for __int128.

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "essval/bigint.hpp"
#include "essval/detail/field_kernel.hpp"
#include "essval/real_value.hpp"

namespace essval::detail {

template <class Int>
struct Elem {
  Int a{0};
  Int b{0};

  friend Elem operator+(const Elem& x, const Elem& y) { return {x.a + y.a, x.b + y.b}; }
  friend Elem operator-(const Elem& x, const Elem& y) { return {x.a - y.a, x.b - y.b}; }
  friend bool operator==(const Elem& x, const Elem& y) { return x.a == y.a && x.b == y.b; }
};

template <class Int>
class Frame {
 public:
  Frame(Int den, Int d) : den_(std::move(den)), d_(std::move(d)) {}

  const Int& den() const { return den_; }
  const Int& d() const { return d_; }

  int sign(const Elem<Int>& x) const { return surd_sign<Int>(x.a, x.b, d_); }
  int compare(const Elem<Int>& x, const Elem<Int>& y) const {
    return surd_sign<Int>(x.a - y.a, x.b - y.b, d_);
  }
  Int floor(const Elem<Int>& x) const { return floor_surd<Int>(x.a, x.b, den_, d_); }

  Elem<Int> integer(const Int& n) const { return {n * den_, Int(0)}; }
  Elem<Int> half() const { return {den_ / 2, Int(0)}; }  // den is always even

  /// x - floor(x).
  Elem<Int> reduce(Elem<Int> x) const {
    const Int n = floor(x);
    x.a -= n * den_;
    return x;
  }
  bool at_least_one(const Elem<Int>& x) const { return surd_sign<Int>(x.a - den_, x.b, d_) >= 0; }
  /// For x in [0, 1): x < 1/2.
  bool in_lower_half(const Elem<Int>& x) const {
    return surd_sign<Int>(x.a + x.a - den_, x.b + x.b, d_) < 0;
  }
  /// Adds a step in [0, 1) to x in [0, 1), wrapping once.
  void advance(Elem<Int>& x, const Elem<Int>& step) const {
    x.a += step.a;
    x.b += step.b;
    if (at_least_one(x)) {
      x.a -= den_;
    }
  }
  /// Subtracts a step in [0, 1) from x in [0, 1), wrapping once.
  void retreat(Elem<Int>& x, const Elem<Int>& step) const {
    x.a -= step.a;
    x.b -= step.b;
    if (sign(x) < 0) {
      x.a += den_;
    }
  }
  /// ||x|| for x in [0, 1).
  Elem<Int> circle_norm(const Elem<Int>& x) const {
    if (in_lower_half(x)) {
      return x;
    }
    return {den_ - x.a, -x.b};
  }

 private:
  Int den_;
  Int d_;
};

/// The BigInt frame for a set of values of one field, with den = 2*lcm(c_i).
struct BigFrame {
  Frame<BigInt> frame;
  std::vector<Elem<BigInt>> elems;
  std::int64_t radicand;
};

inline BigFrame make_frame(std::span<const RealValue> values, std::int64_t extra_den = 1) {
  std::int64_t d = 0;
  BigInt den = 2 * extra_den;
  for (const auto& v : values) {
    d = common_field(d, v.d());
    den = big_lcm(den, v.c());
  }
  BigFrame out{Frame<BigInt>(den, BigInt(d)), {}, d};
  out.elems.reserve(values.size());
  for (const auto& v : values) {
    const BigInt scale = den / v.c();
    out.elems.push_back({v.a() * scale, v.b() * scale});
  }
  return out;
}

inline BigInt to_big(const Int128& v) {
  const bool negative = v < 0;
  const unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                       : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u & ~std::uint64_t{0});
  return negative ? BigInt(-r) : r;
}
inline const BigInt& to_big(const BigInt& v) { return v; }

inline Int128 to_small(const BigInt& v) {
  const bool negative = v < 0;
  const BigInt m = negative ? BigInt(-v) : v;
  const auto hi = static_cast<std::uint64_t>(m >> 64);
  const auto lo = static_cast<std::uint64_t>(m & BigInt(~std::uint64_t{0}));
  const auto s = static_cast<Int128>((static_cast<unsigned __int128>(hi) << 64) | lo);
  return negative ? -s : s;
}

template <class Int>
RealValue to_real(const Frame<Int>& frame, const Elem<Int>& x, std::int64_t d) {
  return RealValue::in_field(to_big(x.a), to_big(x.b), d, to_big(frame.den()));
}

/// Whether every coefficient reached by `growth` additions of any frame element
/// (and sums of three such points) stays below 2^55, and d below 2^16, so that
/// surd_sign's squared terms fit in 127 bits.
inline bool fits_small(const BigFrame& bf, const BigInt& growth) {
  static const BigInt kLimit = BigInt(1) << 55;
  if (bf.frame.d() >= (1 << 16) || bf.frame.den() >= kLimit) {
    return false;
  }
  BigInt max_a = 0;
  BigInt max_b = 0;
  for (const auto& e : bf.elems) {
    max_a = std::max(max_a, abs_of(e.a));
    max_b = std::max(max_b, abs_of(e.b));
  }
  const BigInt factor = 4 * (growth + 2);
  const BigInt bound_b = max_b * factor;
  const BigInt bound_a =
      (max_a + max_b * (isqrt(bf.frame.d()) + 2) + 2 * bf.frame.den()) * factor;
  return bound_b < kLimit && bound_a < kLimit;
}

/// Runs fn(frame, elems) with __int128 coefficients when fits_small allows it
/// and with BigInt coefficients otherwise. fn must be generic over Int.
template <class Fn>
decltype(auto) dispatch(const BigFrame& bf, const BigInt& growth, Fn&& fn, bool allow_small = true) {
  if (allow_small && fits_small(bf, growth)) {
    Frame<Int128> small(to_small(bf.frame.den()), to_small(bf.frame.d()));
    std::vector<Elem<Int128>> elems;
    elems.reserve(bf.elems.size());
    for (const auto& e : bf.elems) {
      elems.push_back({to_small(e.a), to_small(e.b)});
    }
    return fn(small, elems);
  }
  return fn(bf.frame, bf.elems);
}

}  // namespace essval::detail
