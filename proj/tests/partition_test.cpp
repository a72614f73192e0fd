#include <algorithm>
#include <random>

#include "doctest.h"

#include "essval/cf_engine.hpp"
#include "essval/errors.hpp"
#include "essval/essential_values.hpp"
#include "essval/partition.hpp"
#include "support.hpp"

using namespace essval;
using essval::testing::golden;
using essval::testing::rat;
using essval::testing::sqrt2_minus_1;

namespace {

RealValue total_length(const ConstancyPartition& p) {
  RealValue sum(0);
  for (const auto& iv : p.intervals) {
    sum += iv.length;
  }
  return sum;
}

void check_against_direct(const ConstancyPartition& p, const CocycleContext& ctx) {
  for (const auto& iv : p.intervals) {
    const PairValue direct = pair(p.q, midpoint(iv), ctx);
    CHECK(iv.value.first == direct.first);
    if (p.with_t) {
      CHECK(iv.value.second == direct.second);
    }
  }
}

std::vector<BigInt> golden_d(std::size_t depth) { return denominator_set(expand(golden(), depth)); }

}  // namespace

TEST_CASE("discontinuities for q = 1") {
  const CocycleContext third(golden(), rat(1, 3));
  const auto d = discontinuities(1, third);
  REQUIRE(d.size() == 4);
  std::vector<RealValue> locations;
  for (const auto& x : d) {
    locations.push_back(x.location.value());
  }
  CHECK(locations == std::vector<RealValue>{RealValue(0), rat(1, 6), rat(1, 2), rat(2, 3)});
  for (const auto& x : d) {
    const bool first = x.family == Family::A || x.family == Family::B;
    CHECK((x.coordinate == Coordinate::First) == first);
    CHECK(x.jump == ((x.family == Family::A || x.family == Family::C) ? 2 : -2));
  }

  const CocycleContext half(golden(), rat(1, 2));
  const auto b = breakpoints(1, half);
  REQUIRE(b.size() == 2);
  CHECK(b[0].location.value() == RealValue(0));
  CHECK(b[0].jump == PairValue{2, -2});
  CHECK(b[1].location.value() == rat(1, 2));
  CHECK(b[1].jump == PairValue{-2, 2});
  CHECK(b[1].sources == 2);

  const CocycleContext zero(golden(), RealValue(0));
  const auto z = breakpoints(1, zero);
  REQUIRE(z.size() == 2);
  CHECK(z[0].jump == PairValue{2, 2});
  CHECK(z[1].jump == PairValue{-2, -2});
  CHECK(discontinuities(3, zero).size() == 12);
  CHECK(discontinuities(3, zero, false).size() == 6);
}

TEST_CASE("build for q = 1") {
  const CocycleContext half(golden(), rat(1, 2));
  const ConstancyPartition p = build_partition(1, half);
  REQUIRE(p.intervals.size() == 2);
  CHECK(p.intervals[0].value == PairValue{1, -1});
  CHECK(p.intervals[1].value == PairValue{-1, 1});
  CHECK(p.intervals[0].length == rat(1, 2));
  CHECK(p.merged_count == 2);

  const CocycleContext third(golden(), rat(1, 3));
  const ConstancyPartition t = build_partition(1, third);
  REQUIRE(t.intervals.size() == 4);
  CHECK(t.intervals[0].value == PairValue{1, 1});
  CHECK(t.intervals[1].value == PairValue{1, -1});
  CHECK(t.intervals[2].value == PairValue{-1, -1});
  CHECK(t.intervals[3].value == PairValue{-1, 1});
  CHECK(t.intervals[3].right.value() == RealValue(0));
  check_against_direct(t, third);
  CHECK(t.verified_intervals == 4);
}

TEST_CASE("interval lengths below 2/q on convergent denominators") {
  const CocycleContext ctx(golden(), rat(1, 3));
  const ConstancyPartition p = build_partition(13, ctx);
  CHECK(p.intervals.size() == 52);
  for (const auto& iv : p.intervals) {
    CHECK(iv.length < rat(2, 13));
  }
}

TEST_CASE("uniform_distribution_check") {
  const CocycleContext ctx(golden(), rat(1, 3));
  const auto d = golden_d(12);
  CHECK(uniform_distribution_check(1, ctx, d));
  CHECK(uniform_distribution_check(8, ctx, d));
  CHECK_THROWS_AS(uniform_distribution_check(6, ctx, d), PreconditionUnmet);
  for (const auto& q : d) {
    CHECK(uniform_distribution_check(q.convert_to<std::int64_t>(), ctx, d));
  }
  // Literal [i/q, (i+1)/q) arcs fail for q = 8: 8 alpha - 5 < 0, so arc 0
  // holds both 0 and <5 alpha>; the check closes the arcs on the right instead.
  std::vector<int> literal(8, 0);
  for (std::int64_t j = 0; j < 8; ++j) {
    const RealValue x = reduce_mod_1(RealValue(j) * golden()).value();
    ++literal[(RealValue(8) * x).floor().convert_to<std::size_t>()];
  }
  CHECK(std::count(literal.begin(), literal.end(), 1) < 8);
}

TEST_CASE("value_histogram and dominant_value") {
  const CocycleContext third(golden(), rat(1, 3));
  const auto h1 = value_histogram(build_partition(1, third));
  RealValue sum(0);
  for (const auto& [v, m] : h1) {
    CHECK(std::abs(v.first) == 1);
    CHECK(std::abs(v.second) == 1);
    sum += m;
  }
  CHECK(sum == RealValue(1));

  const CocycleContext half(golden(), rat(1, 2));
  const auto h2 = value_histogram(build_partition(1, half));
  CHECK(h2.size() == 2);
  CHECK(h2.at(PairValue{1, -1}) == rat(1, 2));
  CHECK(h2.at(PairValue{-1, 1}) == rat(1, 2));
  CHECK(dominant_value(h2) == PairValue{-1, 1});  // tie goes to the smaller pair

  const auto h13 = value_histogram(build_partition(13, third));
  const PairValue dom = dominant_value(h13);
  CHECK(h13.at(dom) >= rat(1, 16));
  for (const auto& [v, m] : h13) {
    CHECK(std::abs(v.first) % 2 == 1);
    CHECK(std::abs(v.first) <= 3);
    CHECK(std::abs(v.second) % 2 == 1);
    CHECK(std::abs(v.second) <= 3);
  }
}

TEST_CASE("right_neighbor_classes") {
  const CocycleContext half(golden(), rat(1, 2));
  const auto n1 = right_neighbor_classes(build_partition(1, half), PairValue{1, -1});
  REQUIRE(n1.size() == 1);
  CHECK(n1.begin()->first == PairValue{-1, 1});
  CHECK(n1.begin()->second.delta == PairValue{-2, 2});
  CHECK(n1.begin()->second.composite);

  const CocycleContext third(golden(), rat(1, 3));
  const ConstancyPartition p1 = build_partition(1, third);
  for (const auto& iv : p1.intervals) {
    for (const auto& [v, nb] : right_neighbor_classes(p1, iv.value)) {
      const bool one_coordinate = (std::abs(nb.delta.first) == 2 && nb.delta.second == 0)
                                  || (nb.delta.first == 0 && std::abs(nb.delta.second) == 2);
      CHECK(one_coordinate);
      CHECK_FALSE(nb.composite);
    }
  }
  CHECK_THROWS_AS(right_neighbor_classes(p1, PairValue{3, 3}), PreconditionUnmet);

  const ConstancyPartition p13 = build_partition(13, third);
  const auto hist = value_histogram(p13);
  const PairValue dom = dominant_value(hist);
  const EpsilonTheta et = epsilon_theta(13, third);
  const RealValue small = std::min({rat(1, 24), et.epsilon, et.theta});
  RealValue aggregate(0);
  for (const auto& [v, nb] : right_neighbor_classes(p13, dom)) {
    aggregate += nb.measure;
  }
  CHECK(aggregate >= small * hist.at(dom) / RealValue(2));
}

TEST_CASE("summary agrees with the materialised partition") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::int64_t> qs(1, 400);
  for (const RealValue& alpha : {golden(), sqrt2_minus_1(), rat(5, 17)}) {
    for (int i = 0; i < 10; ++i) {
      const CocycleContext ctx(alpha, essval::testing::random_point(rng, alpha).value());
      const std::int64_t q = qs(rng);
      const ConstancyPartition p = build_partition(q, ctx);
      const PartitionSummary s = summarize_partition(q, ctx);
      const auto hist = value_histogram(p);
      CHECK(s.intervals == p.intervals.size());
      CHECK(s.merged_count == p.merged_count);
      CHECK(s.histogram == hist);
      CHECK(s.dominant == dominant_value(hist));
      const auto neighbors = right_neighbor_classes(p, s.dominant);
      REQUIRE(s.neighbors.size() == neighbors.size());
      for (const auto& [v, nb] : neighbors) {
        CHECK(s.neighbors.at(v).measure == nb.measure);
        CHECK(s.neighbors.at(v).composite == nb.composite);
      }
      RealValue lo = p.intervals.front().length;
      RealValue hi = lo;
      for (const auto& iv : p.intervals) {
        lo = std::min(lo, iv.length);
        hi = std::max(hi, iv.length);
      }
      CHECK(s.min_length == lo);
      CHECK(s.max_length == hi);
    }
  }
}

TEST_CASE("property: partitions are sound, including outside the __int128 range") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::int64_t> qs(1, 150);
  // sqrt(65537) - 256 has a radicand too large for the fast path.
  for (const RealValue& alpha :
       {golden(), sqrt2_minus_1(), RealValue::surd(-256, 1, 65537, 1), rat(3, 8)}) {
    for (int i = 0; i < 8; ++i) {
      const CocycleContext ctx(alpha, essval::testing::random_point(rng, alpha).value());
      const std::int64_t q = qs(rng);
      const ConstancyPartition p = build_partition(q, ctx);
      CHECK(total_length(p) == RealValue(1));
      CHECK(p.intervals.size() <= static_cast<std::size_t>(4 * q));
      if (p.merged_count == 4 * q) {
        CHECK(p.intervals.size() == 1);  // every jump cancelled: one interval, the whole circle
      } else {
        CHECK(static_cast<std::int64_t>(p.intervals.size()) + p.merged_count == 4 * q);
      }
      check_against_direct(p, ctx);
      PairValue net{};
      for (const auto& iv : p.intervals) {
        net = net + iv.left_jump;
      }
      CHECK(net == PairValue{});
    }
  }
}

TEST_CASE("property: length bounds on convergent denominators") {
  std::mt19937_64 rng(43);
  const auto d = golden_d(14);
  for (int i = 0; i < 6; ++i) {
    const CocycleContext ctx(golden(), essval::testing::random_point(rng, golden()).value());
    for (const auto& big_q : d) {
      const auto q = big_q.convert_to<std::int64_t>();
      const ConstancyPartition p = build_partition(q, ctx);
      const EpsilonTheta et = epsilon_theta(q, ctx);
      const RealValue lower =
          std::min({rat(1, 24 * q), et.epsilon / RealValue(q), et.theta / RealValue(q)});
      const RealValue ratio = std::min({rat(1, 24), et.epsilon, et.theta}) / RealValue(2);
      RealValue lo = p.intervals.front().length;
      RealValue hi = lo;
      for (const auto& iv : p.intervals) {
        CHECK(iv.length >= lower);
        CHECK(iv.length < rat(2, q));
        lo = std::min(lo, iv.length);
        hi = std::max(hi, iv.length);
      }
      CHECK(lo / hi > ratio);
    }
  }
}

TEST_CASE("verification modes") {
  const CocycleContext ctx(golden(), rat(2, 7));
  PartitionOptions off;
  off.verify = VerifyMode::Off;
  CHECK(build_partition(50, ctx, off).verified_intervals == 0);
  PartitionOptions sampled;
  sampled.verify = VerifyMode::Sampled;
  sampled.seed = 7;
  CHECK(build_partition(100, ctx, sampled).verified_intervals == 10);
  PartitionOptions small_limit;
  small_limit.full_verify_limit = 10;
  CHECK(build_partition(100, ctx, small_limit).verified_intervals == 10);
  CHECK(build_partition(100, ctx).verified_intervals == 400);
  CHECK_THROWS_AS(build_partition(0, ctx), PreconditionUnmet);
}

TEST_CASE("large convergent denominators through the summary") {
  const CocycleContext ctx(golden(), rat(1, 3));
  const PartitionSummary s = summarize_partition(121393, ctx);
  CHECK(s.intervals == 4 * 121393);
  RealValue sum(0);
  for (const auto& [v, m] : s.histogram) {
    sum += m;
  }
  CHECK(sum == RealValue(1));
  CHECK(s.max_length < rat(2, 121393));
  CHECK(s.verified_intervals > 0);
}
