#include "essval/real_value.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "essval/detail/field_kernel.hpp"
#include "essval/errors.hpp"

namespace essval {

std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t n) {
  if (n < 0) {
    throw Error("negative radicand " + std::to_string(n));
  }
  std::int64_t square = 1;
  std::int64_t core = n;
  for (std::int64_t p = 2; p * p <= core; ++p) {
    while (core % (p * p) == 0) {
      core /= p * p;
      square *= p;
    }
  }
  return {square, core};
}

std::int64_t common_field(std::int64_t d1, std::int64_t d2) {
  if (d1 == 0) {
    return d2;
  }
  if (d2 == 0 || d1 == d2) {
    return d1;
  }
  throw IncomparableRepresentations("values live in Q(sqrt(" + std::to_string(d1)
                                    + ")) and Q(sqrt(" + std::to_string(d2) + "))");
}

std::int64_t common_field(const RealValue& x, const RealValue& y) {
  return common_field(x.d(), y.d());
}

RealValue RealValue::rational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw Error("zero denominator");
  }
  RealValue v;
  v.a_ = num;
  v.c_ = den;
  v.normalize();
  return v;
}

RealValue RealValue::surd(const BigInt& a, const BigInt& b, std::int64_t radicand,
                          const BigInt& c) {
  if (c == 0) {
    throw Error("zero denominator");
  }
  auto [square, core] = squarefree_split(radicand);
  RealValue v;
  v.a_ = a;
  v.b_ = b * square;
  v.c_ = c;
  v.d_ = core;
  if (core == 1) {
    v.a_ += v.b_;
    v.b_ = 0;
    v.d_ = 0;
  }
  v.normalize();
  return v;
}

RealValue RealValue::in_field(BigInt a, BigInt b, std::int64_t d, BigInt c) {
  if (c == 0) {
    throw Error("zero denominator");
  }
  RealValue v;
  v.a_ = std::move(a);
  v.b_ = std::move(b);
  v.c_ = std::move(c);
  v.d_ = d;
  v.normalize();
  return v;
}

void RealValue::normalize() {
  if (d_ == 0 || b_ == 0) {
    b_ = 0;
    d_ = 0;
  }
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  BigInt g = big_gcd(big_gcd(a_, b_), c_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

int RealValue::sign() const { return detail::surd_sign<BigInt>(a_, b_, BigInt(d_)); }

BigInt RealValue::floor() const { return detail::floor_surd<BigInt>(a_, b_, c_, BigInt(d_)); }

BigInt RealValue::ceil() const { return -(-*this).floor(); }

RealValue RealValue::operator-() const {
  RealValue v = *this;
  v.a_ = -v.a_;
  v.b_ = -v.b_;
  return v;
}

RealValue& RealValue::operator+=(const RealValue& rhs) {
  const std::int64_t d = common_field(*this, rhs);
  if (c_ == rhs.c_) {
    a_ += rhs.a_;
    b_ += rhs.b_;
  } else {
    a_ = a_ * rhs.c_ + rhs.a_ * c_;
    b_ = b_ * rhs.c_ + rhs.b_ * c_;
    c_ *= rhs.c_;
  }
  d_ = d;
  normalize();
  return *this;
}

RealValue& RealValue::operator-=(const RealValue& rhs) { return *this += -rhs; }

RealValue& RealValue::operator*=(const RealValue& rhs) {
  const std::int64_t d = common_field(*this, rhs);
  BigInt a = a_ * rhs.a_ + b_ * rhs.b_ * d;
  BigInt b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  c_ *= rhs.c_;
  d_ = d;
  normalize();
  return *this;
}

RealValue& RealValue::operator/=(const RealValue& rhs) {
  if (rhs.is_zero()) {
    throw Error("division by zero");
  }
  // 1 / ((a + b sqrt d) / c) = c (a - b sqrt d) / (a^2 - b^2 d)
  const BigInt norm = rhs.a_ * rhs.a_ - rhs.b_ * rhs.b_ * rhs.d_;
  RealValue inverse;
  inverse.a_ = rhs.c_ * rhs.a_;
  inverse.b_ = -rhs.c_ * rhs.b_;
  inverse.c_ = norm;
  inverse.d_ = rhs.d_;
  inverse.normalize();
  return *this *= inverse;
}

std::strong_ordering operator<=>(const RealValue& x, const RealValue& y) {
  common_field(x, y);
  const int s = (x - y).sign();
  if (s < 0) {
    return std::strong_ordering::less;
  }
  return s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::strong_ordering compare(const RealValue& x, const RealValue& y) { return x <=> y; }

std::string RealValue::to_string() const {
  if (d_ == 0) {
    return c_ == 1 ? a_.str() : a_.str() + "/" + c_.str();
  }
  std::string s = "(" + a_.str();
  s += (b_ < 0) ? "-" : "+";
  s += abs_of(b_).str() + "*sqrt(" + std::to_string(d_) + "))/" + c_.str();
  return s;
}

std::string RealValue::to_decimal(int digits) const {
  digits = std::max(digits, 0);
  const int s = sign();
  const RealValue magnitude = s < 0 ? -*this : *this;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) {
    scale *= 10;
  }
  const BigInt scaled = (magnitude * RealValue(scale)).floor();
  std::string body = scaled.str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return (s < 0 ? "-" : "") + body;
}

double RealValue::to_double() const {
  constexpr int kBits = 64;
  const BigInt scaled = (*this * RealValue(BigInt(1) << kBits)).floor();
  return std::ldexp(scaled.convert_to<double>(), -kBits);
}

std::ostream& operator<<(std::ostream& os, const RealValue& v) { return os << v.to_string(); }

BigInt nearest_integer(const RealValue& x) {
  const RealValue shifted = x + one_half();
  BigInt n = shifted.floor();
  if (shifted.is_integer() && n % 2 != 0) {
    --n;  // exact tie
  }
  return n;
}

RealValue distance_to_integers(const RealValue& x) {
  RealValue diff = x - RealValue(nearest_integer(x));
  return diff.sign() < 0 ? -diff : diff;
}

CirclePoint::CirclePoint(const RealValue& x) : value_(x - RealValue(x.floor())) {}

CirclePoint reduce_mod_1(const RealValue& x) { return CirclePoint(x); }

}  // namespace essval
