#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "essval/bigint.hpp"
#include "essval/real_value.hpp"

namespace essval {

struct Convergent {
  std::int64_t k{0};
  BigInt p;
  BigInt q;
};

/// Eventual period of the partial quotients a_1, a_2, ... : quotients[start ..
/// start + length) repeats forever. `start` is an index into
/// ConvergentTable::quotients (0 is a_1).
struct QuotientPeriod {
  std::size_t start{0};
  std::vector<BigInt> cycle;
};

/// Continued fraction [a0; a1, a2, ...] of alpha and its convergents p_k/q_k,
/// k = 0..K. The expansion stops as soon as the denominator set D(alpha) has
/// the requested number of distinct elements.
struct ConvergentTable {
  RealValue alpha;
  BigInt a0;
  std::vector<BigInt> quotients;  // a_1 .. a_K
  std::vector<Convergent> convergents;
  /// The expansion of a rational alpha terminated before the requested depth.
  bool finite{false};
  /// alpha is a rational truncation of a number outside Q(sqrt(d)).
  bool approximate{false};
  std::optional<QuotientPeriod> period;
};

struct ExpandOptions {
  /// Return a short table instead of throwing RationalExhausted.
  bool allow_finite{false};
  bool approximate{false};
};

inline constexpr std::size_t kDefaultDepth = 40;

/// Expands alpha until D(alpha) has `depth` elements. Quadratic surds are
/// expanded by the exact floor-and-invert recursion, whose period is detected
/// by repetition of the normalised complete quotient.
ConvergentTable expand(const RealValue& alpha, std::size_t depth, ExpandOptions options = {});

/// D(alpha) as a strictly increasing list; q_0 = q_1 = 1 collapses to one entry.
std::vector<BigInt> denominator_set(const ConvergentTable& table);

/// q+ = min{q' in D : q' > q}. Throws PreconditionUnmet when q is not in D and
/// EndOfTable when q is the last computed denominator.
BigInt next_denominator(const BigInt& q, std::span<const BigInt> denominators);

/// Outcome of exhaustively checking min_{q <= q' < q+} ||q' alpha|| = ||q alpha||
/// for the k-th element q of D(alpha).
struct BestApproxRecord {
  std::size_t index{0};
  BigInt q;
  BigInt q_next;
  RealValue minimum;  // ||q alpha||
  BigInt argmin;
};

/// Throws ViolationFound with the offending q' if any ||q' alpha|| < ||q alpha||
/// or if ||q alpha|| <= 1/(q + q+). `max_range` caps q+ - q.
BestApproxRecord verify_best_approx(const ConvergentTable& table, std::size_t index,
                                    std::int64_t max_range = 10'000'000);

enum class Approximability {
  Periodic,       ///< exact: eventually periodic expansion of a surd
  DepthLimited,   ///< truncated input; only the computed prefix is known
  NotApplicable,  ///< alpha is an exact rational
};

struct ApproximabilityReport {
  Approximability status{Approximability::NotApplicable};
  bool badly_approximable{false};
  /// Max partial quotient over one period (Periodic) or over the computed
  /// prefix (DepthLimited); a_0 is excluded.
  BigInt max_quotient{0};
};

ApproximabilityReport is_badly_approximable(const ConvergentTable& table);

struct HalfDistanceRecord {
  BigInt q;
  RealValue minimum;  // min_{|j|<q} ||1/2 - j alpha||
  std::int64_t argmin{0};
  RealValue bound;  // 1/(24 q)
};

/// Exhaustive check of min_{|j|<q} ||1/2 - j alpha|| >= 1/(24 q) for q in D.
/// Throws LemmaViolated on failure.
HalfDistanceRecord half_distance_lemma_check(const ConvergentTable& table, const BigInt& q);

/// Result of the exact convergent identities over a whole table.
struct ConvergentIdentities {
  bool determinant{true};  // q_k p_{k-1} - p_k q_{k-1} = (-1)^k
  bool recurrence{true};   // p_k/q_k equals [a0; a1..ak] evaluated directly
  bool coprime{true};
  bool chain{true};        // ||q alpha|| < 1/q+ < 1/q along D(alpha)
  std::optional<std::int64_t> first_failure;
  std::string failure;

  bool all() const { return determinant && recurrence && coprime && chain; }
};

ConvergentIdentities check_convergent_identities(const ConvergentTable& table);

}  // namespace essval
