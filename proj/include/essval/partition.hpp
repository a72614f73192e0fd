#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "essval/cocycle.hpp"
#include "essval/real_value.hpp"

namespace essval {

enum class Coordinate { First, Second };

/// A: <-j alpha> (+2 on first), B: <1/2 - j alpha> (-2 on first),
/// C: <-t - j alpha> (+2 on second), D: <1/2 - t - j alpha> (-2 on second).
enum class Family { A, B, C, D };

struct Discontinuity {
  CirclePoint location;
  Coordinate coordinate{Coordinate::First};
  int jump{0};
  Family family{Family::A};
  std::int64_t j{0};
};

/// A location where at least one coordinate of (a_q(x), a_q(x+t)) changes,
/// with the net jump after merging coincident discontinuities.
struct Breakpoint {
  CirclePoint location;
  PairValue jump;
  int sources{0};
};

struct Interval {
  CirclePoint left;
  CirclePoint right;  // right < left when the interval wraps through 0
  RealValue length;
  PairValue value;
  /// Net jump at `left` and how many raw discontinuities merged there.
  PairValue left_jump;
  int left_sources{0};
};

enum class VerifyMode { Auto, Full, Sampled, Off };

struct PartitionOptions {
  /// Without the C/D families only a_q(x) is tracked; `value.second` is 0.
  bool include_t_families{true};
  VerifyMode verify{VerifyMode::Auto};
  /// Auto verifies every interval up to this q and a seeded sample above it.
  std::int64_t full_verify_limit{10'000};
  std::uint64_t seed{0};
};

/// Cyclic partition of T into maximal half-open intervals on which both
/// a_q(x) and a_q(x+t) are constant.
struct ConstancyPartition {
  std::int64_t q{0};
  bool with_t{true};
  std::vector<Interval> intervals;  // in increasing order of left endpoint
  /// Raw discontinuities absorbed by merging (4q - #breakpoints with t).
  std::int64_t merged_count{0};
  std::size_t verified_intervals{0};
};

/// All 4q (or 2q without t) raw discontinuities, sorted by location then family.
std::vector<Discontinuity> discontinuities(std::int64_t q, const CocycleContext& ctx,
                                           bool include_t_families = true);

/// Coincident discontinuities merged; breakpoints with zero net jump removed.
std::vector<Breakpoint> breakpoints(std::int64_t q, const CocycleContext& ctx,
                                    bool include_t_families = true);

/// The value on the first interval is evaluated directly at its midpoint; the
/// others follow by accumulating jumps. Throws WrapInconsistent if the jumps do
/// not return to the start value and VerificationMismatch if a verified
/// midpoint disagrees with direct evaluation.
ConstancyPartition build_partition(std::int64_t q, const CocycleContext& ctx,
                                   const PartitionOptions& options = {});

struct NeighborClass {
  RealValue measure;
  PairValue delta;  // neighbour value minus the dominant value
  /// The jump came from merged discontinuities rather than a single +-2 step
  /// on one coordinate.
  bool composite{false};
};

using ValueHistogram = std::map<PairValue, RealValue>;

/// Aggregate view of a partition that never materialises its intervals; used
/// when q is too large to keep one exact value per interval.
struct PartitionSummary {
  std::int64_t q{0};
  std::size_t intervals{0};
  std::int64_t merged_count{0};
  std::size_t verified_intervals{0};
  ValueHistogram histogram;
  PairValue dominant;
  std::map<PairValue, NeighborClass> neighbors;  // of the dominant class
  RealValue min_length;
  RealValue max_length;
};

PartitionSummary summarize_partition(std::int64_t q, const CocycleContext& ctx,
                                     const PartitionOptions& options = {});

/// Midpoint of an interval, wrapping through 0 where needed.
CirclePoint midpoint(const Interval& interval);

/// True iff each of the q arcs between consecutive points i/q contains exactly
/// one <j alpha>, 0 <= j < q. The arcs are [i/q, (i+1)/q) when q alpha > p and
/// (i/q, (i+1)/q] when q alpha < p, p = [q alpha]; with the opposite closure
/// the point 0 shares an arc with <j alpha> for some j. Throws
/// PreconditionUnmet unless q belongs to `denominators`.
bool uniform_distribution_check(std::int64_t q, const CocycleContext& ctx,
                                const std::vector<BigInt>& denominators);

/// Total length per pair value; the measures sum to exactly 1.
ValueHistogram value_histogram(const ConstancyPartition& partition);

/// The class with the largest measure; ties go to the smallest pair.
PairValue dominant_value(const ValueHistogram& histogram);

/// Histogram of the values on the intervals immediately to the right of the
/// intervals carrying `dominant`. Throws PreconditionUnmet if `dominant` does
/// not occur.
std::map<PairValue, NeighborClass> right_neighbor_classes(const ConstancyPartition& partition,
                                                          PairValue dominant);

}  // namespace essval
