#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "essval/bigint.hpp"

namespace essval {

/// An exact real number (a + b*sqrt(d)) / c in the quadratic field Q(sqrt(d)).
///
/// Representation is canonical: c > 0, gcd(a, b, c) = 1, d squarefree and
/// different from 1, and b = 0 exactly when d = 0. Two values are equal iff
/// their coefficients are equal. Values from two distinct irrational fields cannot be
/// combined; any attempt throws IncomparableRepresentations.
class RealValue {
 public:
  RealValue() = default;
  RealValue(std::int64_t n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  explicit RealValue(BigInt n) : a_(std::move(n)) {}

  static RealValue rational(const BigInt& num, const BigInt& den);
  /// (a + b*sqrt(radicand)) / c. The radicand need not be squarefree.
  static RealValue surd(const BigInt& a, const BigInt& b, std::int64_t radicand,
                        const BigInt& c);
  /// As surd(), for a radicand already known to be squarefree (or 0).
  static RealValue in_field(BigInt a, BigInt b, std::int64_t d, BigInt c);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  std::int64_t d() const { return d_; }

  bool is_rational() const { return d_ == 0; }
  bool is_integer() const { return d_ == 0 && c_ == 1; }
  bool is_zero() const { return d_ == 0 && a_ == 0; }

  int sign() const;
  BigInt floor() const;
  BigInt ceil() const;

  RealValue operator-() const;
  RealValue& operator+=(const RealValue& rhs);
  RealValue& operator-=(const RealValue& rhs);
  RealValue& operator*=(const RealValue& rhs);
  RealValue& operator/=(const RealValue& rhs);

  friend RealValue operator+(RealValue lhs, const RealValue& rhs) { return lhs += rhs; }
  friend RealValue operator-(RealValue lhs, const RealValue& rhs) { return lhs -= rhs; }
  friend RealValue operator*(RealValue lhs, const RealValue& rhs) { return lhs *= rhs; }
  friend RealValue operator/(RealValue lhs, const RealValue& rhs) { return lhs /= rhs; }

  friend bool operator==(const RealValue& x, const RealValue& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
  }
  /// Exact ordering; throws IncomparableRepresentations across fields.
  friend std::strong_ordering operator<=>(const RealValue& x, const RealValue& y);

  /// `p/q` (or `p` for integers) for rationals, `(a+b*sqrt(d))/c` for surds.
  std::string to_string() const;
  /// Non-authoritative decimal rendering, truncated toward zero after `digits`
  /// fractional digits.
  std::string to_decimal(int digits = 50) const;
  /// Diagnostic approximation only; never used to decide anything.
  double to_double() const;

 private:
  void normalize();

  BigInt a_{0};
  BigInt b_{0};
  BigInt c_{1};
  std::int64_t d_{0};
};

std::ostream& operator<<(std::ostream& os, const RealValue& v);

/// The radicand shared by x and y, or 0 when both are rational.
std::int64_t common_field(const RealValue& x, const RealValue& y);
std::int64_t common_field(std::int64_t d1, std::int64_t d2);

/// Writes n = s^2 * core with core squarefree; returns {s, core}.
std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t n);

/// The closest integer [x]; exact half-integers round to even.
BigInt nearest_integer(const RealValue& x);
/// ||x|| = |x - [x]|, in [0, 1/2].
RealValue distance_to_integers(const RealValue& x);
std::strong_ordering compare(const RealValue& x, const RealValue& y);

/// A point of the circle T = [0, 1), stored as its exact representative.
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(const RealValue& x);
  /// Wraps a value the caller has already reduced into [0, 1).
  static CirclePoint from_reduced(RealValue x) {
    CirclePoint p;
    p.value_ = std::move(x);
    return p;
  }

  const RealValue& value() const { return value_; }

  friend CirclePoint operator+(const CirclePoint& x, const CirclePoint& y) {
    return CirclePoint(x.value_ + y.value_);
  }
  friend CirclePoint operator-(const CirclePoint& x, const CirclePoint& y) {
    return CirclePoint(x.value_ - y.value_);
  }
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
  friend std::strong_ordering operator<=>(const CirclePoint& x, const CirclePoint& y) {
    return x.value_ <=> y.value_;
  }

 private:
  RealValue value_;
};

/// x - floor(x).
CirclePoint reduce_mod_1(const RealValue& x);

inline const RealValue& one_half() {
  static const RealValue half = RealValue::rational(1, 2);
  return half;
}

}  // namespace essval
