#include "essval/cf_engine.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "essval/detail/frame.hpp"
#include "essval/detail/orbit.hpp"
#include "essval/errors.hpp"

namespace essval {

namespace {

constexpr std::size_t kMaxPeriodSearch = 100'000;

using QuotientKey = std::tuple<BigInt, BigInt, BigInt>;

QuotientKey key_of(const RealValue& x) { return {x.a(), x.b(), x.c()}; }

std::optional<QuotientPeriod> find_period(const RealValue& alpha) {
  if (alpha.is_rational()) {
    return std::nullopt;
  }
  std::map<QuotientKey, std::size_t> seen;
  std::vector<BigInt> quotients;
  RealValue x = alpha - RealValue(alpha.floor());
  for (std::size_t i = 0; i < kMaxPeriodSearch; ++i) {
    x = RealValue(1) / x;  // complete quotient x_{i+1}
    auto [it, inserted] = seen.emplace(key_of(x), i);
    if (!inserted) {
      QuotientPeriod period;
      period.start = it->second;
      period.cycle.assign(quotients.begin() + static_cast<std::ptrdiff_t>(it->second),
                          quotients.end());
      return period;
    }
    const BigInt a = x.floor();
    quotients.push_back(a);
    x -= RealValue(a);
  }
  return std::nullopt;
}

}  // namespace

ConvergentTable expand(const RealValue& alpha, std::size_t depth, ExpandOptions options) {
  if (depth < 1) {
    throw PreconditionUnmet("expansion depth must be at least 1");
  }
  ConvergentTable table;
  table.alpha = alpha;
  table.approximate = options.approximate;
  table.a0 = alpha.floor();
  table.period = find_period(alpha);

  BigInt p_prev = 1;
  BigInt q_prev = 0;
  BigInt p = table.a0;
  BigInt q = 1;
  table.convergents.push_back({0, p, q});
  std::size_t distinct = 1;
  BigInt last_q = 1;

  RealValue frac = alpha - RealValue(table.a0);
  while (distinct < depth) {
    BigInt a;
    const std::size_t idx = table.quotients.size();
    if (table.period && idx >= table.period->start) {
      const auto& cycle = table.period->cycle;
      a = cycle[(idx - table.period->start) % cycle.size()];
    } else {
      if (frac.is_zero()) {
        if (!options.allow_finite) {
          throw RationalExhausted("continued fraction of " + alpha.to_string() + " ends after "
                                  + std::to_string(distinct) + " denominators");
        }
        table.finite = true;
        break;
      }
      const RealValue x = RealValue(1) / frac;
      a = x.floor();
      frac = x - RealValue(a);
    }
    table.quotients.push_back(a);
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    table.convergents.push_back({static_cast<std::int64_t>(table.quotients.size()), p, q});
    if (q != last_q) {
      ++distinct;
      last_q = q;
    }
  }
  if (alpha.is_rational() && frac.is_zero() && !table.period) {
    table.finite = true;
  }
  return table;
}

std::vector<BigInt> denominator_set(const ConvergentTable& table) {
  std::vector<BigInt> out;
  for (const auto& c : table.convergents) {
    if (out.empty() || out.back() != c.q) {
      out.push_back(c.q);
    }
  }
  return out;
}

BigInt next_denominator(const BigInt& q, std::span<const BigInt> denominators) {
  const auto it = std::lower_bound(denominators.begin(), denominators.end(), q);
  if (it == denominators.end() || *it != q) {
    throw PreconditionUnmet(q.str() + " is not a convergent denominator");
  }
  if (std::next(it) == denominators.end()) {
    throw EndOfTable(q.str() + " is the last computed denominator");
  }
  return *std::next(it);
}

BestApproxRecord verify_best_approx(const ConvergentTable& table, std::size_t index,
                                    std::int64_t max_range) {
  const auto denominators = denominator_set(table);
  if (index + 1 >= denominators.size()) {
    throw EndOfTable("no successor for denominator index " + std::to_string(index));
  }
  BestApproxRecord rec;
  rec.index = index;
  rec.q = denominators[index];
  rec.q_next = denominators[index + 1];
  if (rec.q_next - rec.q > max_range) {
    throw PreconditionUnmet("range [" + rec.q.str() + ", " + rec.q_next.str()
                            + ") too large for exhaustive check");
  }
  const auto steps = static_cast<std::int64_t>(rec.q_next - rec.q);

  const RealValue alpha_frac = reduce_mod_1(table.alpha).value();
  const RealValue start = reduce_mod_1(RealValue(rec.q) * table.alpha).value();
  const std::vector<RealValue> values{start, alpha_frac};
  const auto bf = detail::make_frame(values);
  std::int64_t worse_at = -1;
  auto scan = [&](const auto& frame, const auto& elems) {
    auto point = elems[0];
    const auto base = frame.circle_norm(point);
    for (std::int64_t i = 1; i < steps; ++i) {
      frame.advance(point, elems[1]);
      if (frame.compare(frame.circle_norm(point), base) < 0) {
        worse_at = i;
        break;
      }
    }
    return detail::to_real(frame, base, bf.radicand);
  };
  rec.minimum = detail::dispatch(bf, BigInt(steps), scan);
  rec.argmin = rec.q;
  if (worse_at >= 0) {
    throw ViolationFound("||q' alpha|| < ||q alpha|| at q' = " + BigInt(rec.q + worse_at).str());
  }
  const RealValue lower = RealValue::rational(1, rec.q + rec.q_next);
  if (rec.minimum <= lower) {
    throw ViolationFound("||q alpha|| <= 1/(q + q+) at q = " + rec.q.str());
  }
  return rec;
}

ApproximabilityReport is_badly_approximable(const ConvergentTable& table) {
  ApproximabilityReport report;
  if (table.period) {
    report.status = Approximability::Periodic;
    report.badly_approximable = true;
    report.max_quotient = *std::max_element(table.period->cycle.begin(), table.period->cycle.end());
    return report;
  }
  if (table.approximate && !table.quotients.empty()) {
    report.status = Approximability::DepthLimited;
    report.max_quotient = *std::max_element(table.quotients.begin(), table.quotients.end());
    // A finite prefix cannot establish boundedness.
    report.badly_approximable = false;
    return report;
  }
  report.status = Approximability::NotApplicable;
  if (!table.quotients.empty()) {
    report.max_quotient = *std::max_element(table.quotients.begin(), table.quotients.end());
  }
  return report;
}

HalfDistanceRecord half_distance_lemma_check(const ConvergentTable& table, const BigInt& q) {
  const auto denominators = denominator_set(table);
  if (!std::binary_search(denominators.begin(), denominators.end(), q)) {
    throw PreconditionUnmet(q.str() + " is not a convergent denominator");
  }
  const std::vector<RealValue> values{one_half(), reduce_mod_1(table.alpha).value()};
  const auto bf = detail::make_frame(values);
  const auto window = q.convert_to<std::int64_t>();
  HalfDistanceRecord rec;
  rec.q = q;
  rec.bound = RealValue::rational(1, 24 * q);
  auto scan = [&](const auto& frame, const auto& elems) {
    const auto best = detail::min_norm_over_window(frame, elems[0], elems[1], window);
    rec.argmin = best.argmin;
    return detail::to_real(frame, best.value, bf.radicand);
  };
  rec.minimum = detail::dispatch(bf, BigInt(window), scan);
  if (rec.minimum < rec.bound) {
    throw LemmaViolated("min ||1/2 - j alpha|| = " + rec.minimum.to_string() + " < 1/(24*"
                        + q.str() + ") at j = " + std::to_string(rec.argmin));
  }
  return rec;
}

ConvergentIdentities check_convergent_identities(const ConvergentTable& table) {
  ConvergentIdentities out;
  auto fail = [&](bool& flag, std::int64_t k, const std::string& what) {
    if (flag) {
      flag = false;
      if (!out.first_failure) {
        out.first_failure = k;
        out.failure = what;
      }
    }
  };
  const auto& conv = table.convergents;
  for (std::size_t i = 0; i < conv.size(); ++i) {
    const auto& c = conv[i];
    if (big_gcd(c.p, c.q) != 1) {
      fail(out.coprime, c.k, "gcd(p_k, q_k) != 1");
    }
    if (i >= 1) {
      const BigInt det = c.q * conv[i - 1].p - c.p * conv[i - 1].q;
      const BigInt expected = (c.k % 2 == 0) ? 1 : -1;
      if (det != expected) {
        fail(out.determinant, c.k, "q_k p_{k-1} - p_k q_{k-1} != (-1)^k");
      }
    }
    // [a0; a1..ak] from the innermost quotient outward.
    RealValue value = (c.k == 0) ? RealValue(table.a0)
                                 : RealValue(table.quotients[static_cast<std::size_t>(c.k) - 1]);
    for (std::int64_t m = c.k - 1; m >= 0; --m) {
      const BigInt& a = (m == 0) ? table.a0 : table.quotients[static_cast<std::size_t>(m) - 1];
      value = RealValue(a) + RealValue(1) / value;
    }
    if (value != RealValue::rational(c.p, c.q)) {
      fail(out.recurrence, c.k, "p_k/q_k differs from direct evaluation");
    }
  }
  const auto denominators = denominator_set(table);
  for (std::size_t i = 0; i + 1 < denominators.size(); ++i) {
    const BigInt& q = denominators[i];
    const BigInt& q_next = denominators[i + 1];
    const RealValue norm = distance_to_integers(RealValue(q) * table.alpha);
    if (!(norm < RealValue::rational(1, q_next)) || !(q_next > q)) {
      fail(out.chain, static_cast<std::int64_t>(i), "||q alpha|| < 1/q+ < 1/q fails at q = " + q.str());
    }
  }
  return out;
}

}  // namespace essval
