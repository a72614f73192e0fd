#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "essval/cf_engine.hpp"
#include "essval/cocycle.hpp"
#include "essval/partition.hpp"
#include "essval/subgroup.hpp"

namespace essval {

/// epsilon(q) = q min_{|j|<q} ||-t - j alpha||, theta(q) = q min_{|j|<q} ||1/2 - t - j alpha||,
/// with i_q and j_q the minimising j (smaller |j| first, then negative j).
struct EpsilonTheta {
  std::int64_t q{0};
  RealValue epsilon;
  RealValue theta;
  std::int64_t i_q{0};
  std::int64_t j_q{0};

  RealValue min_value() const { return epsilon < theta ? epsilon : theta; }
};

EpsilonTheta epsilon_theta(std::int64_t q, const CocycleContext& ctx);

struct Evidence {
  std::int64_t q{0};
  RealValue measure;
};

/// A pair value that the detector saw on sets of measure >= delta for
/// `window` consecutive denominators.
struct CandidateValue {
  PairValue value;
  std::vector<Evidence> evidence;  // strictly increasing q
  RealValue min_measure;
};

struct DetectOptions {
  RealValue delta{RealValue::rational(1, 128)};
  std::int64_t window{10};
  PartitionOptions partition{};
  /// Worker threads for the per-q partition builds (0: hardware concurrency).
  unsigned threads{1};
};

/// What the detector recorded for one denominator.
struct DetectionStep {
  std::int64_t q{0};
  PairValue dominant;
  RealValue dominant_measure;
  RealValue min_epsilon_theta;
  /// Values that met a threshold at this q, with the measure that met it.
  std::vector<std::pair<PairValue, RealValue>> hits;
  std::size_t intervals{0};
};

struct DetectionResult {
  std::vector<CandidateValue> candidates;  // sorted by value
  std::vector<DetectionStep> steps;
};

/// A value is hit at q when its class has measure >= delta, or when it is a
/// right-neighbour class of the dominant class with measure at least
/// min{1/24, delta}/128 while min{epsilon(q), theta(q)} >= delta. A value hit
/// for `window` consecutive q of the sequence becomes a candidate.
DetectionResult detect(const std::vector<std::int64_t>& q_sequence, const CocycleContext& ctx,
                       const DetectOptions& options = {});

/// Canonical subgroup generated by the candidate values.
SubgroupZ2 close_subgroup(const std::vector<CandidateValue>& candidates);

struct ClassifyOptions {
  std::size_t depth{30};
  DetectOptions detect{};
  /// Also run the detector over the even denominators; their candidates are
  /// reported separately and join the subgroup.
  bool include_even{false};
  /// Denominators above this bound are skipped (0: no bound).
  std::int64_t max_q{0};
};

enum class PredictionBasis {
  ExactMembership,  ///< t in Z alpha or Z alpha + 1/2, found exactly
  BadlyApproximable,  ///< neither, and alpha has bounded partial quotients
  Generic,          ///< neither, alpha not known to be badly approximable
};

struct ClassificationReport {
  RealValue alpha;
  CirclePoint t;
  std::size_t depth{0};
  std::int64_t max_q{0};
  RealValue delta;
  std::int64_t window{0};
  bool alpha_approximate{false};
  std::vector<EpsilonTheta> epsilon_theta_table;
  std::vector<std::int64_t> odd_sequence;
  std::vector<std::int64_t> even_sequence;
  DetectionResult odd;
  std::optional<DetectionResult> even;
  SubgroupZ2 subgroup;
  std::optional<std::int64_t> t_in_z_alpha;
  std::optional<std::int64_t> t_in_z_alpha_plus_half;
  ApproximabilityReport approximability;
  SubgroupClass expected{SubgroupClass::FullG};
  PredictionBasis basis{PredictionBasis::Generic};
  bool agreement{false};
};

/// Runs the detector along D(alpha) and compares the closed subgroup with the
/// class predicted from exact membership of t: Diagonal for t in Z alpha,
/// AntiDiagonal for t in Z alpha + 1/2, FullG otherwise.
ClassificationReport classify(const CocycleContext& ctx, const ClassifyOptions& options = {},
                              bool alpha_approximate = false);

struct LimsupReport {
  bool holds_empirically{false};
  RealValue best_delta;
  std::vector<std::int64_t> witnesses;  // the denominators the verdict rests on
  std::vector<EpsilonTheta> table;
};

/// Evaluates min{epsilon(q), theta(q)} over D(alpha) up to `depth` and asks
/// whether it stays positive along the last third of the denominators;
/// best_delta is the minimum over that tail.
LimsupReport limsup_criterion(const CocycleContext& ctx, std::size_t depth);

enum class ArgminStability { None, IConstant, JConstant };

struct DecayReport {
  ArgminStability stability{ArgminStability::None};
  /// t = <w alpha> (IConstant) or t = <1/2 + w alpha> (JConstant).
  std::optional<std::int64_t> witness;
  bool confirmed{false};  // witness re-checked by exact membership
  std::vector<EpsilonTheta> table;
};

/// For badly approximable alpha: if epsilon (or theta) vanishes along the tail
/// of D(alpha) with a constant minimiser, infers t in Z alpha (or Z alpha + 1/2).
/// Throws PreconditionUnmet when alpha is not known to be badly approximable.
DecayReport decay_diagnosis(const CocycleContext& ctx, std::size_t depth);

/// epsilon_theta for every q of the table's D(alpha) in increasing order.
std::vector<EpsilonTheta> epsilon_theta_table(const CocycleContext& ctx,
                                              const std::vector<BigInt>& denominators,
                                              unsigned threads = 1);

std::string to_string(PredictionBasis b);
std::string to_string(ArgminStability s);

}  // namespace essval
