#pragma once

#include <compare>
#include <cstdint>
#include <optional>

#include "essval/bigint.hpp"
#include "essval/real_value.hpp"

namespace essval {

/// (a_n(x), a_n(x + t)); both coordinates have the parity of n.
struct PairValue {
  std::int64_t first{0};
  std::int64_t second{0};

  friend auto operator<=>(const PairValue&, const PairValue&) = default;
  friend PairValue operator+(PairValue x, PairValue y) {
    return {x.first + y.first, x.second + y.second};
  }
  friend PairValue operator-(PairValue x, PairValue y) {
    return {x.first - y.first, x.second - y.second};
  }
};

inline constexpr std::int64_t kDefaultSearchBound = 10'000;

/// The rotation x -> x + alpha together with the shift t. The degenerate
/// cases t = <j alpha> and t = <1/2 + j alpha>, |j| <= search_bound, are
/// detected exactly and recorded, not rejected.
class CocycleContext {
 public:
  /// alpha is reduced mod 1 and must not be an integer. Throws
  /// IncomparableRepresentations if alpha and t live in different fields.
  CocycleContext(const RealValue& alpha, const RealValue& t,
                 std::int64_t search_bound = kDefaultSearchBound);

  const RealValue& alpha() const { return alpha_.value(); }
  const CirclePoint& t() const { return t_; }
  std::int64_t search_bound() const { return search_bound_; }
  std::int64_t field() const { return field_; }
  bool alpha_rational() const { return alpha_.value().is_rational(); }

  /// j with t = <j alpha>, if one exists with |j| <= search_bound.
  const std::optional<std::int64_t>& t_in_z_alpha() const { return in_z_alpha_; }
  /// j with t = <1/2 + j alpha>, if one exists with |j| <= search_bound.
  const std::optional<std::int64_t>& t_in_z_alpha_plus_half() const { return in_z_alpha_half_; }

 private:
  CirclePoint alpha_;
  CirclePoint t_;
  std::int64_t search_bound_;
  std::int64_t field_;
  std::optional<std::int64_t> in_z_alpha_;
  std::optional<std::int64_t> in_z_alpha_half_;
};

/// Smallest-|j| solution of t = <offset + j alpha> with |j| <= bound (negative
/// j first on ties), decided exactly.
std::optional<std::int64_t> solve_orbit_membership(const RealValue& t, const RealValue& offset,
                                                   const RealValue& alpha, std::int64_t bound);

/// f(x) = 1 on [0, 1/2), -1 on [1/2, 1).
int step(const CirclePoint& x);

/// S_n(x) = #{0 <= i < n : <x + i alpha> in [0, 1/2)}, by direct summation.
std::int64_t count_s(std::int64_t n, const CirclePoint& x, const CocycleContext& ctx);

/// a_n(x) for every integer n: 2 S_n(x) - n for n >= 1, 0 for n = 0, and
/// -a_{-n}(<x + n alpha>) for n <= -1.
std::int64_t birkhoff_a(std::int64_t n, const CirclePoint& x, const CocycleContext& ctx);

PairValue pair(std::int64_t n, const CirclePoint& x, const CocycleContext& ctx);

/// a_n(<x + m alpha>) - a_{n+m}(x) + a_m(x) == 0.
bool check_cocycle_identity(std::int64_t m, std::int64_t n, const CirclePoint& x,
                            const CocycleContext& ctx);

/// |a_n(x + m alpha) - a_n(x)| <= 2m and |a_n(x + 1/2 + m alpha) + a_n(x)| <= 2m,
/// for n > m >= 0.
bool check_shift_bound(std::int64_t m, std::int64_t n, const CirclePoint& x,
                       const CocycleContext& ctx);

struct DenjoyKoksmaRecord {
  BigInt q;
  BigInt p;
  std::int64_t max_abs{0};
  std::size_t intervals{0};
};

/// max over T of |a_q| for a convergent denominator q, read off the constancy
/// partition of a_q. Throws PreconditionUnmet unless p = [q alpha] satisfies
/// gcd(p, q) = 1 and |alpha - p/q| < 1/q^2, and BoundViolated if the maximum
/// exceeds 3.
DenjoyKoksmaRecord denjoy_koksma_check(std::int64_t q, const CocycleContext& ctx);

namespace detail {
/// count_s with the __int128 fast path optionally disabled; used to check the
/// two arithmetic paths against each other.
std::int64_t count_s_with(std::int64_t n, const RealValue& x, const RealValue& alpha,
                          bool allow_small);
}  // namespace detail

}  // namespace essval
