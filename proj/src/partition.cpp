#include "essval/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "essval/detail/frame.hpp"
#include "essval/detail/orbit.hpp"
#include "essval/errors.hpp"

namespace essval {

namespace {

using detail::Elem;
using detail::Frame;

constexpr Family kFamilies[] = {Family::A, Family::B, Family::C, Family::D};

Coordinate coordinate_of(Family f) {
  return (f == Family::A || f == Family::B) ? Coordinate::First : Coordinate::Second;
}

int jump_of(Family f) { return (f == Family::A || f == Family::C) ? 2 : -2; }

PairValue jump_vector(Family f) {
  return coordinate_of(f) == Coordinate::First ? PairValue{jump_of(f), 0}
                                               : PairValue{0, jump_of(f)};
}

template <class Int>
struct RawPoint {
  Elem<Int> location;
  Family family;
  std::int64_t j;
};

// The 4q (2q without t) discontinuities, sorted by location then family.
// Frame elements: [0] alpha, [1] t, both reduced.
template <class Int>
std::vector<RawPoint<Int>> raw_points(const Frame<Int>& frame, const std::vector<Elem<Int>>& elems,
                                      std::int64_t q, bool with_t) {
  const Elem<Int> zero{};
  const Elem<Int> offsets[] = {zero, frame.half(), frame.reduce(zero - elems[1]),
                               frame.reduce(frame.half() - elems[1])};
  std::vector<RawPoint<Int>> out;
  out.reserve(static_cast<std::size_t>((with_t ? 4 : 2) * q));
  for (int f = 0; f < (with_t ? 4 : 2); ++f) {
    Elem<Int> p = offsets[f];
    for (std::int64_t j = 0; j < q; ++j) {
      out.push_back({p, kFamilies[f], j});
      frame.retreat(p, elems[0]);
    }
  }
  std::sort(out.begin(), out.end(), [&frame](const RawPoint<Int>& x, const RawPoint<Int>& y) {
    const int c = frame.compare(x.location, y.location);
    return c != 0 ? c < 0 : x.family < y.family;
  });
  return out;
}

template <class Int>
struct MergedPoint {
  Elem<Int> location;
  PairValue jump;
  int sources;
};

/// <-j alpha> for 0 <= j < q, ascending.
template <class Int>
std::vector<Elem<Int>> sorted_orbit(const Frame<Int>& frame, const Elem<Int>& alpha,
                                    std::int64_t q) {
  std::vector<Elem<Int>> out;
  out.reserve(static_cast<std::size_t>(q));
  Elem<Int> p{};
  for (std::int64_t j = 0; j < q; ++j) {
    out.push_back(p);
    frame.retreat(p, alpha);
  }
  std::sort(out.begin(), out.end(), [&frame](const Elem<Int>& x, const Elem<Int>& y) {
    return frame.compare(x, y) < 0;
  });
  return out;
}

// The sorted orbit translated by a reduced offset, read in ascending order:
// the points that wrap past 1 come first.
template <class Int>
class RotatedCursor {
 public:
  RotatedCursor(const Frame<Int>& frame, const std::vector<Elem<Int>>& orbit, Elem<Int> offset,
                PairValue jump)
      : frame_(&frame), orbit_(&orbit), offset_(std::move(offset)), jump_(jump) {
    const Elem<Int> threshold = frame.integer(Int(1)) - offset_;
    split_ = static_cast<std::size_t>(
        std::partition_point(orbit.begin(), orbit.end(),
                             [&](const Elem<Int>& u) { return frame.compare(u, threshold) < 0; })
        - orbit.begin());
    load();
  }

  bool done() const { return pos_ == orbit_->size(); }
  const Elem<Int>& current() const { return current_; }
  PairValue jump() const { return jump_; }
  void next() {
    ++pos_;
    load();
  }

 private:
  void load() {
    if (done()) {
      return;
    }
    const std::size_t n = orbit_->size();
    const std::size_t idx = (split_ + pos_) % n;
    current_ = (*orbit_)[idx] + offset_;
    if (idx >= split_) {
      current_.a -= frame_->den();
    }
  }

  const Frame<Int>* frame_;
  const std::vector<Elem<Int>>* orbit_;
  Elem<Int> offset_;
  PairValue jump_;
  std::size_t split_{0};
  std::size_t pos_{0};
  Elem<Int> current_;
};

// The four families are translates of one sorted orbit, so they are merged
// rather than sorted; coincident locations are combined and zero net jumps
// dropped.
template <class Int>
std::vector<MergedPoint<Int>> merged_points(const Frame<Int>& frame,
                                            const std::vector<Elem<Int>>& elems,
                                            const std::vector<Elem<Int>>& orbit, bool with_t) {
  const Elem<Int>& t = elems[1];
  const Elem<Int> zero{};
  const Elem<Int> offsets[] = {zero, frame.half(), frame.reduce(zero - t),
                               frame.reduce(frame.half() - t)};
  std::vector<RotatedCursor<Int>> cursors;
  for (int f = 0; f < (with_t ? 4 : 2); ++f) {
    cursors.emplace_back(frame, orbit, offsets[f], jump_vector(kFamilies[f]));
  }
  std::vector<MergedPoint<Int>> pts;
  pts.reserve(cursors.size() * orbit.size());
  while (true) {
    RotatedCursor<Int>* low = nullptr;
    for (auto& c : cursors) {
      if (!c.done() && (low == nullptr || frame.compare(c.current(), low->current()) < 0)) {
        low = &c;
      }
    }
    if (low == nullptr) {
      break;
    }
    if (!pts.empty() && pts.back().location == low->current()) {
      pts.back().jump = pts.back().jump + low->jump();
      ++pts.back().sources;
    } else {
      if (!pts.empty() && pts.back().jump == PairValue{}) {
        pts.pop_back();
      }
      pts.push_back({low->current(), low->jump(), 1});
    }
    low->next();
  }
  if (!pts.empty() && pts.back().jump == PairValue{}) {
    pts.pop_back();
  }
  pts.shrink_to_fit();
  return pts;
}

/// S_q by counting orbit points in an arc: <x + i alpha> < 1/2 iff
/// <-i alpha> lies in (x - 1/2, x] mod 1.
template <class Int>
class OrbitCounter {
 public:
  OrbitCounter(const Frame<Int>& doubled, const std::vector<Elem<Int>>& orbit)
      : doubled_(&doubled), orbit_(&orbit) {}

  std::int64_t count(const Elem<Int>& x) const {
    const auto q = static_cast<std::int64_t>(orbit_->size());
    const Elem<Int> half = doubled_->half();
    if (doubled_->compare(x, half) >= 0) {
      return at_most(x) - at_most(x - half);
    }
    return at_most(x) + q - at_most(x + half);
  }

 private:
  // #{u in orbit : u <= y}, orbit points scaled into the doubled frame.
  std::int64_t at_most(const Elem<Int>& y) const {
    const auto it = std::partition_point(orbit_->begin(), orbit_->end(), [&](const Elem<Int>& u) {
      return doubled_->compare(Elem<Int>{u.a * 2, u.b * 2}, y) <= 0;
    });
    return it - orbit_->begin();
  }

  const Frame<Int>* doubled_;
  const std::vector<Elem<Int>>* orbit_;
};

/// Direct pair(q, x) inside a frame scaled by two, so that midpoints of frame
/// points are representable.
template <class Int>
class DirectEvaluator {
 public:
  DirectEvaluator(const Frame<Int>& frame, const std::vector<Elem<Int>>& elems, std::int64_t q,
                  bool with_t)
      : doubled_(frame.den() * 2, frame.d()),
        alpha_{elems[0].a * 2, elems[0].b * 2},
        t_{elems[1].a * 2, elems[1].b * 2},
        q_(q),
        with_t_(with_t) {}

  /// Midpoint of [left, right) in the original frame, wrapping when right <= left.
  Elem<Int> midpoint(const Elem<Int>& left, const Elem<Int>& right, bool wraps,
                     const Frame<Int>& frame) const {
    Elem<Int> sum = left + right;
    if (wraps) {
      sum.a += frame.den();
    }
    return doubled_.reduce(sum);
  }

  PairValue at(const Elem<Int>& x) const {
    PairValue v;
    v.first = 2 * detail::count_lower_half(doubled_, x, alpha_, q_) - q_;
    if (with_t_) {
      Elem<Int> shifted = x;
      doubled_.advance(shifted, t_);
      v.second = 2 * detail::count_lower_half(doubled_, shifted, alpha_, q_) - q_;
    }
    return v;
  }

  /// Same value as at(), from the sorted orbit in O(log q).
  PairValue counted(const Elem<Int>& x, const OrbitCounter<Int>& counter) const {
    PairValue v;
    v.first = 2 * counter.count(x) - q_;
    if (with_t_) {
      Elem<Int> shifted = x;
      doubled_.advance(shifted, t_);
      v.second = 2 * counter.count(shifted) - q_;
    }
    return v;
  }

  const Frame<Int>& frame() const { return doubled_; }

 private:
  Frame<Int> doubled_;
  Elem<Int> alpha_;
  Elem<Int> t_;
  std::int64_t q_;
  bool with_t_;
};

detail::BigFrame context_frame(const CocycleContext& ctx) {
  const std::vector<RealValue> values{ctx.alpha(), ctx.t().value()};
  return detail::make_frame(values);
}

BigInt growth_for(std::int64_t q) { return BigInt(4) * q + 8; }

std::string pair_text(PairValue v) {
  return "(" + std::to_string(v.first) + ", " + std::to_string(v.second) + ")";
}

/// Breakpoints with propagated interval values; interval k is
/// [points[k], points[k+1]) and the last one wraps through 0.
template <class Int>
struct Core {
  std::vector<MergedPoint<Int>> points;
  std::vector<PairValue> values;
  std::int64_t merged_count{0};
  std::size_t verified{0};
  PairValue whole_value;  // only when there are no breakpoints

  Elem<Int> length(std::size_t k, const Frame<Int>& frame) const {
    const std::size_t n = points.size();
    Elem<Int> len = points[(k + 1) % n].location - points[k].location;
    if (k + 1 == n) {
      len.a += frame.den();
    }
    return len;
  }
};

template <class Int>
Core<Int> build_core(const Frame<Int>& frame, const std::vector<Elem<Int>>& elems, std::int64_t q,
                     const PartitionOptions& options) {
  const bool with_t = options.include_t_families;
  Core<Int> core;
  const auto orbit = sorted_orbit(frame, elems[0], q);
  core.points = merged_points(frame, elems, orbit, with_t);
  const std::size_t n = core.points.size();
  core.merged_count = (with_t ? 4 : 2) * q - static_cast<std::int64_t>(n);
  const DirectEvaluator<Int> direct(frame, elems, q, with_t);
  if (n == 0) {
    core.whole_value = direct.at(direct.frame().half());
    return core;
  }
  auto mid = [&](std::size_t k) {
    return direct.midpoint(core.points[k].location, core.points[(k + 1) % n].location, k + 1 == n,
                           frame);
  };

  auto& values = core.values;
  values.resize(n);
  values[0] = direct.at(mid(0));
  for (std::size_t k = 1; k < n; ++k) {
    values[k] = values[k - 1] + core.points[k].jump;
  }
  if (values[n - 1] + core.points[0].jump != values[0]) {
    throw WrapInconsistent("jumps around the circle end at "
                           + pair_text(values[n - 1] + core.points[0].jump) + " instead of "
                           + pair_text(values[0]) + " for q = " + std::to_string(q));
  }

  VerifyMode mode = options.verify;
  if (mode == VerifyMode::Auto) {
    mode = q <= options.full_verify_limit ? VerifyMode::Full : VerifyMode::Sampled;
  }
  std::vector<std::size_t> to_check;
  if (mode == VerifyMode::Full) {
    to_check.resize(n);
    std::iota(to_check.begin(), to_check.end(), std::size_t{0});
  } else if (mode == VerifyMode::Sampled) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const auto samples = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(q))));
    for (std::size_t s = 0; s < samples; ++s) {
      to_check.push_back(pick(rng));
    }
  }
  const OrbitCounter<Int> counter(direct.frame(), orbit);
  for (std::size_t k : to_check) {
    const PairValue expected = direct.counted(mid(k), counter);
    if (expected != values[k]) {
      throw VerificationMismatch("interval " + std::to_string(k) + " of q = " + std::to_string(q)
                                 + " propagated " + pair_text(values[k]) + " but evaluates to "
                                 + pair_text(expected));
    }
  }
  core.verified = to_check.size();
  return core;
}

bool is_single_step(PairValue delta) {
  return (std::abs(delta.first) == 2 && delta.second == 0)
         || (delta.first == 0 && std::abs(delta.second) == 2);
}

}  // namespace

std::vector<Discontinuity> discontinuities(std::int64_t q, const CocycleContext& ctx,
                                           bool include_t_families) {
  if (q < 1) {
    throw PreconditionUnmet("q must be positive");
  }
  const auto bf = context_frame(ctx);
  auto run = [&](const auto& frame, const auto& elems) {
    const auto raw = raw_points(frame, elems, q, include_t_families);
    std::vector<Discontinuity> out;
    out.reserve(raw.size());
    for (const auto& r : raw) {
      out.push_back({CirclePoint::from_reduced(detail::to_real(frame, r.location, bf.radicand)),
                     coordinate_of(r.family), jump_of(r.family), r.family, r.j});
    }
    return out;
  };
  return detail::dispatch(bf, growth_for(q), run);
}

std::vector<Breakpoint> breakpoints(std::int64_t q, const CocycleContext& ctx,
                                    bool include_t_families) {
  if (q < 1) {
    throw PreconditionUnmet("q must be positive");
  }
  const auto bf = context_frame(ctx);
  auto run = [&](const auto& frame, const auto& elems) {
    const auto merged =
        merged_points(frame, elems, sorted_orbit(frame, elems[0], q), include_t_families);
    std::vector<Breakpoint> out;
    out.reserve(merged.size());
    for (const auto& m : merged) {
      out.push_back({CirclePoint::from_reduced(detail::to_real(frame, m.location, bf.radicand)),
                     m.jump, m.sources});
    }
    return out;
  };
  return detail::dispatch(bf, growth_for(q), run);
}

ConstancyPartition build_partition(std::int64_t q, const CocycleContext& ctx,
                                   const PartitionOptions& options) {
  if (q < 1) {
    throw PreconditionUnmet("q must be positive");
  }
  const auto bf = context_frame(ctx);
  ConstancyPartition out;
  out.q = q;
  out.with_t = options.include_t_families;

  auto run = [&](const auto& frame, const auto& elems) {
    const auto core = build_core(frame, elems, q, options);
    out.merged_count = core.merged_count;
    out.verified_intervals = core.verified;
    const std::size_t n = core.points.size();
    if (n == 0) {
      Interval whole;
      whole.length = RealValue(1);
      whole.value = core.whole_value;
      out.intervals.push_back(std::move(whole));
      return;
    }
    out.intervals.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      Interval iv;
      iv.left = CirclePoint::from_reduced(
          detail::to_real(frame, core.points[k].location, bf.radicand));
      iv.right = CirclePoint::from_reduced(
          detail::to_real(frame, core.points[(k + 1) % n].location, bf.radicand));
      iv.length = detail::to_real(frame, core.length(k, frame), bf.radicand);
      iv.value = core.values[k];
      iv.left_jump = core.points[k].jump;
      iv.left_sources = core.points[k].sources;
      out.intervals.push_back(std::move(iv));
    }
  };
  detail::dispatch(bf, growth_for(q), run);
  return out;
}

PartitionSummary summarize_partition(std::int64_t q, const CocycleContext& ctx,
                                     const PartitionOptions& options) {
  if (q < 1) {
    throw PreconditionUnmet("q must be positive");
  }
  const auto bf = context_frame(ctx);
  PartitionSummary out;
  out.q = q;

  auto run = [&](const auto& frame, const auto& elems) {
    using Int = std::decay_t<decltype(frame.den())>;
    const auto core = build_core(frame, elems, q, options);
    out.merged_count = core.merged_count;
    out.verified_intervals = core.verified;
    const std::size_t n = core.points.size();
    auto real = [&](const Elem<Int>& e) { return detail::to_real(frame, e, bf.radicand); };
    if (n == 0) {
      out.intervals = 1;
      out.histogram.emplace(core.whole_value, RealValue(1));
      out.dominant = core.whole_value;
      out.min_length = RealValue(1);
      out.max_length = RealValue(1);
      return;
    }
    out.intervals = n;

    // Class totals can outgrow the fast-path bound, so they accumulate in BigInt.
    auto big = [](const Elem<Int>& e) { return Elem<BigInt>{detail::to_big(e.a), detail::to_big(e.b)}; };
    std::map<PairValue, Elem<BigInt>> totals;
    Elem<Int> shortest = core.length(0, frame);
    Elem<Int> longest = shortest;
    for (std::size_t k = 0; k < n; ++k) {
      const Elem<Int> len = core.length(k, frame);
      auto [it, inserted] = totals.try_emplace(core.values[k], big(len));
      if (!inserted) {
        it->second = it->second + big(len);
      }
      if (frame.compare(len, shortest) < 0) {
        shortest = len;
      }
      if (frame.compare(len, longest) > 0) {
        longest = len;
      }
    }
    // Dominant: largest measure, ties to the smallest pair.
    auto best = totals.begin();
    for (auto it = totals.begin(); it != totals.end(); ++it) {
      if (bf.frame.compare(it->second, best->second) > 0) {
        best = it;
      }
    }
    out.dominant = best->first;

    struct Neighbor {
      Elem<BigInt> measure;
      bool composite;
    };
    std::map<PairValue, Neighbor> neighbors;
    for (std::size_t k = 0; k < n; ++k) {
      if (core.values[k] != out.dominant) {
        continue;
      }
      const std::size_t next = (k + 1) % n;
      if (core.values[next] == out.dominant) {
        continue;
      }
      const Elem<BigInt> len = big(core.length(next, frame));
      const bool composite = core.points[next].sources > 1
                             || !is_single_step(core.values[next] - out.dominant);
      auto [it, inserted] = neighbors.try_emplace(core.values[next], Neighbor{len, composite});
      if (!inserted) {
        it->second.measure = it->second.measure + len;
        it->second.composite = it->second.composite || composite;
      }
    }
    for (const auto& [value, total] : totals) {
      out.histogram.emplace(value, detail::to_real(bf.frame, total, bf.radicand));
    }
    for (const auto& [value, nb] : neighbors) {
      out.neighbors.emplace(value, NeighborClass{detail::to_real(bf.frame, nb.measure, bf.radicand),
                                                 value - out.dominant, nb.composite});
    }
    out.min_length = real(shortest);
    out.max_length = real(longest);
  };
  detail::dispatch(bf, growth_for(q), run);
  return out;
}

CirclePoint midpoint(const Interval& interval) {
  RealValue sum = interval.left.value() + interval.right.value();
  if (!(interval.left < interval.right)) {
    sum += RealValue(1);
  }
  return reduce_mod_1(sum / RealValue(2));
}

bool uniform_distribution_check(std::int64_t q, const CocycleContext& ctx,
                                const std::vector<BigInt>& denominators) {
  if (!std::binary_search(denominators.begin(), denominators.end(), BigInt(q))) {
    throw PreconditionUnmet(std::to_string(q) + " is not a convergent denominator");
  }
  const RealValue q_alpha = RealValue(q) * ctx.alpha();
  const bool left_closed = (q_alpha - RealValue(nearest_integer(q_alpha))).sign() >= 0;
  const std::vector<RealValue> values{ctx.alpha()};
  const auto bf = detail::make_frame(values);
  auto run = [&](const auto& frame, const auto& elems) {
    using Int = std::decay_t<decltype(frame.den())>;
    std::vector<int> hits(static_cast<std::size_t>(q), 0);
    Elem<Int> p{};
    const Int scale(q);
    for (std::int64_t j = 0; j < q; ++j) {
      const Elem<Int> scaled{p.a * scale, p.b * scale};
      Int bin;
      if (left_closed) {
        bin = frame.floor(scaled);
      } else {
        // ceil(q p) - 1, with p = 0 belonging to the last arc.
        bin = -frame.floor(Elem<Int>{-scaled.a, -scaled.b}) - 1;
        if (bin < 0) {
          bin += scale;
        }
      }
      ++hits[static_cast<std::size_t>(bin)];
      frame.advance(p, elems[0]);
    }
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  };
  return detail::dispatch(bf, BigInt(q) * q, run);
}

ValueHistogram value_histogram(const ConstancyPartition& partition) {
  ValueHistogram out;
  for (const auto& iv : partition.intervals) {
    auto [it, inserted] = out.try_emplace(iv.value, iv.length);
    if (!inserted) {
      it->second += iv.length;
    }
  }
  return out;
}

PairValue dominant_value(const ValueHistogram& histogram) {
  if (histogram.empty()) {
    throw PreconditionUnmet("empty histogram");
  }
  auto best = histogram.begin();
  for (auto it = histogram.begin(); it != histogram.end(); ++it) {
    if (it->second > best->second) {
      best = it;
    }
  }
  return best->first;
}

std::map<PairValue, NeighborClass> right_neighbor_classes(const ConstancyPartition& partition,
                                                          PairValue dominant) {
  std::map<PairValue, NeighborClass> out;
  const auto& ivs = partition.intervals;
  bool found = false;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    if (ivs[i].value != dominant) {
      continue;
    }
    found = true;
    const Interval& next = ivs[(i + 1) % ivs.size()];
    if (next.value == dominant) {
      continue;
    }
    const PairValue delta = next.value - dominant;
    const bool single_step = is_single_step(delta);
    auto [it, inserted] = out.try_emplace(next.value, NeighborClass{next.length, delta, false});
    if (!inserted) {
      it->second.measure += next.length;
    }
    if (next.left_sources > 1 || !single_step) {
      it->second.composite = true;
    }
  }
  if (!found) {
    throw PreconditionUnmet("value " + pair_text(dominant) + " does not occur in the partition");
  }
  return out;
}

}  // namespace essval
