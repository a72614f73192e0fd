#include "essval/cocycle.hpp"

#include <cstdlib>

#include "essval/detail/frame.hpp"
#include "essval/detail/orbit.hpp"
#include "essval/errors.hpp"
#include "essval/partition.hpp"

namespace essval {

std::optional<std::int64_t> solve_orbit_membership(const RealValue& t, const RealValue& offset,
                                                   const RealValue& alpha, std::int64_t bound) {
  const RealValue target = t - offset;
  auto works = [&](std::int64_t j) {
    return (target - RealValue(j) * alpha).is_integer();
  };
  if (!alpha.is_rational()) {
    // The sqrt(d) parts must cancel, which pins j down.
    const RealValue ratio = RealValue::rational(target.b() * alpha.c(), target.c() * alpha.b());
    if (!ratio.is_integer() || abs_of(ratio.a()) > bound) {
      return std::nullopt;
    }
    const auto j = ratio.a().convert_to<std::int64_t>();
    return works(j) ? std::optional<std::int64_t>(j) : std::nullopt;
  }
  if (!target.is_rational()) {
    return std::nullopt;
  }
  for (std::int64_t k = 0; k <= bound; ++k) {
    if (works(-k)) {
      return -k;
    }
    if (k != 0 && works(k)) {
      return k;
    }
  }
  return std::nullopt;
}

CocycleContext::CocycleContext(const RealValue& alpha, const RealValue& t,
                               std::int64_t search_bound)
    : alpha_(reduce_mod_1(alpha)),
      t_(reduce_mod_1(t)),
      search_bound_(search_bound),
      field_(common_field(alpha, t)) {
  if (alpha_.value().is_zero()) {
    throw PreconditionUnmet("alpha must not be an integer");
  }
  in_z_alpha_ = solve_orbit_membership(t_.value(), RealValue(0), alpha_.value(), search_bound_);
  in_z_alpha_half_ = solve_orbit_membership(t_.value(), one_half(), alpha_.value(), search_bound_);
}

int step(const CirclePoint& x) { return x.value() < one_half() ? 1 : -1; }

namespace detail {

std::int64_t count_s_with(std::int64_t n, const RealValue& x, const RealValue& alpha,
                          bool allow_small) {
  if (n <= 0) {
    return 0;
  }
  const std::vector<RealValue> values{reduce_mod_1(x).value(), reduce_mod_1(alpha).value()};
  const auto bf = make_frame(values);
  auto run = [n](const auto& frame, const auto& elems) {
    return count_lower_half(frame, elems[0], elems[1], n);
  };
  return dispatch(bf, BigInt(n), run, allow_small);
}

}  // namespace detail

std::int64_t count_s(std::int64_t n, const CirclePoint& x, const CocycleContext& ctx) {
  return detail::count_s_with(n, x.value(), ctx.alpha(), true);
}

std::int64_t birkhoff_a(std::int64_t n, const CirclePoint& x, const CocycleContext& ctx) {
  if (n == 0) {
    return 0;
  }
  if (n > 0) {
    return 2 * count_s(n, x, ctx) - n;
  }
  const CirclePoint shifted = reduce_mod_1(x.value() + RealValue(n) * ctx.alpha());
  return -(2 * count_s(-n, shifted, ctx) + n);
}

PairValue pair(std::int64_t n, const CirclePoint& x, const CocycleContext& ctx) {
  return {birkhoff_a(n, x, ctx), birkhoff_a(n, x + ctx.t(), ctx)};
}

bool check_cocycle_identity(std::int64_t m, std::int64_t n, const CirclePoint& x,
                            const CocycleContext& ctx) {
  const CirclePoint moved = reduce_mod_1(x.value() + RealValue(m) * ctx.alpha());
  return birkhoff_a(n, moved, ctx) - birkhoff_a(n + m, x, ctx) + birkhoff_a(m, x, ctx) == 0;
}

bool check_shift_bound(std::int64_t m, std::int64_t n, const CirclePoint& x,
                       const CocycleContext& ctx) {
  if (m < 0 || n <= m) {
    throw PreconditionUnmet("shift bound needs n > m >= 0");
  }
  const RealValue shift = RealValue(m) * ctx.alpha();
  const std::int64_t base = birkhoff_a(n, x, ctx);
  const std::int64_t moved = birkhoff_a(n, reduce_mod_1(x.value() + shift), ctx);
  const std::int64_t flipped = birkhoff_a(n, reduce_mod_1(x.value() + one_half() + shift), ctx);
  return std::llabs(moved - base) <= 2 * m && std::llabs(flipped + base) <= 2 * m;
}

DenjoyKoksmaRecord denjoy_koksma_check(std::int64_t q, const CocycleContext& ctx) {
  if (q < 1) {
    throw PreconditionUnmet("q must be positive");
  }
  DenjoyKoksmaRecord rec;
  rec.q = q;
  const RealValue q_alpha = RealValue(q) * ctx.alpha();
  rec.p = nearest_integer(q_alpha);
  const RealValue gap = q_alpha - RealValue(rec.p);  // q (alpha - p/q)
  const RealValue abs_gap = gap.sign() < 0 ? -gap : gap;
  if (big_gcd(rec.p, rec.q) != 1 || !(abs_gap < RealValue::rational(1, q))) {
    throw PreconditionUnmet("q = " + std::to_string(q)
                            + " has no coprime p with |alpha - p/q| < 1/q^2");
  }
  PartitionOptions options;
  options.include_t_families = false;
  const PartitionSummary summary = summarize_partition(q, ctx, options);
  for (const auto& [value, measure] : summary.histogram) {
    rec.max_abs = std::max<std::int64_t>(rec.max_abs, std::llabs(value.first));
  }
  rec.intervals = summary.intervals;
  if (rec.max_abs > 3) {
    throw BoundViolated("|a_q| reaches " + std::to_string(rec.max_abs) + " for q = "
                        + std::to_string(q));
  }
  return rec;
}

}  // namespace essval
