#include "essval/essential_values.hpp"

#include <algorithm>
#include <map>

#include "essval/detail/frame.hpp"
#include "essval/detail/orbit.hpp"
#include "essval/detail/parallel.hpp"
#include "essval/errors.hpp"

namespace essval {

namespace {

using detail::parallel_for;

std::vector<std::int64_t> to_int64(const std::vector<BigInt>& qs) {
  std::vector<std::int64_t> out;
  out.reserve(qs.size());
  for (const auto& q : qs) {
    out.push_back(q.convert_to<std::int64_t>());
  }
  return out;
}

const RealValue& min_of(const RealValue& x, const RealValue& y) { return x < y ? x : y; }

}  // namespace

std::string to_string(PredictionBasis b) {
  switch (b) {
    case PredictionBasis::ExactMembership:
      return "exact-membership";
    case PredictionBasis::BadlyApproximable:
      return "badly-approximable";
    case PredictionBasis::Generic:
      return "generic";
  }
  return "generic";
}

std::string to_string(ArgminStability s) {
  switch (s) {
    case ArgminStability::None:
      return "no-decay";
    case ArgminStability::IConstant:
      return "i_q-constant";
    case ArgminStability::JConstant:
      return "j_q-constant";
  }
  return "no-decay";
}

EpsilonTheta epsilon_theta(std::int64_t q, const CocycleContext& ctx) {
  if (q < 1) {
    throw PreconditionUnmet("q must be positive");
  }
  const std::vector<RealValue> values{ctx.alpha(), ctx.t().value()};
  const auto bf = detail::make_frame(values);
  EpsilonTheta out;
  out.q = q;
  auto run = [&](const auto& frame, const auto& elems) {
    using Elem = std::decay_t<decltype(elems[0])>;
    const Elem zero{};
    const auto eps = detail::min_norm_over_window(frame, frame.reduce(zero - elems[1]), elems[0], q);
    const auto theta =
        detail::min_norm_over_window(frame, frame.reduce(frame.half() - elems[1]), elems[0], q);
    out.epsilon = RealValue(q) * detail::to_real(frame, eps.value, bf.radicand);
    out.theta = RealValue(q) * detail::to_real(frame, theta.value, bf.radicand);
    out.i_q = eps.argmin;
    out.j_q = theta.argmin;
  };
  detail::dispatch(bf, BigInt(2) * q + 8, run);
  return out;
}

std::vector<EpsilonTheta> epsilon_theta_table(const CocycleContext& ctx,
                                              const std::vector<BigInt>& denominators,
                                              unsigned threads) {
  const auto qs = to_int64(denominators);
  std::vector<EpsilonTheta> out(qs.size());
  parallel_for(qs.size(), threads, [&](std::size_t i) { out[i] = epsilon_theta(qs[i], ctx); });
  return out;
}

DetectionResult detect(const std::vector<std::int64_t>& q_sequence, const CocycleContext& ctx,
                       const DetectOptions& options) {
  if (!(options.delta.sign() > 0)) {
    throw PreconditionUnmet("delta must be positive");
  }
  if (options.window < 2) {
    throw PreconditionUnmet("window must be at least 2");
  }
  if (!std::is_sorted(q_sequence.begin(), q_sequence.end())
      || std::adjacent_find(q_sequence.begin(), q_sequence.end()) != q_sequence.end()) {
    throw PreconditionUnmet("q sequence must be strictly increasing");
  }
  const std::size_t n = q_sequence.size();
  std::vector<PartitionSummary> summaries(n);
  std::vector<EpsilonTheta> minima(n);
  parallel_for(n, options.threads, [&](std::size_t i) {
    summaries[i] = summarize_partition(q_sequence[i], ctx, options.partition);
    minima[i] = epsilon_theta(q_sequence[i], ctx);
  });

  const RealValue neighbor_floor =
      min_of(RealValue::rational(1, 24), options.delta) / RealValue(128);

  DetectionResult result;
  struct Run {
    std::vector<Evidence> evidence;
    bool promoted{false};
  };
  std::map<PairValue, Run> runs;
  std::map<PairValue, CandidateValue> candidates;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& summary = summaries[i];
    DetectionStep step;
    step.q = summary.q;
    step.dominant = summary.dominant;
    step.dominant_measure = summary.histogram.at(summary.dominant);
    step.min_epsilon_theta = minima[i].min_value();
    step.intervals = summary.intervals;

    std::map<PairValue, RealValue> hits;
    for (const auto& [value, measure] : summary.histogram) {
      if (measure >= options.delta) {
        hits.emplace(value, measure);
      }
    }
    if (step.min_epsilon_theta >= options.delta) {
      for (const auto& [value, neighbor] : summary.neighbors) {
        if (neighbor.measure >= neighbor_floor) {
          hits.emplace(value, summary.histogram.at(value));
        }
      }
    }

    for (auto it = runs.begin(); it != runs.end();) {
      if (!hits.contains(it->first)) {
        it = runs.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& [value, measure] : hits) {
      step.hits.emplace_back(value, measure);
      Run& run = runs[value];
      run.evidence.push_back({summary.q, measure});
      if (run.evidence.size() >= static_cast<std::size_t>(options.window)) {
        auto [cand, inserted] = candidates.try_emplace(value);
        if (inserted || run.promoted) {
          // The first qualifying run is the evidence trail; it keeps growing
          // while the run lasts.
          cand->second.value = value;
          cand->second.evidence = run.evidence;
          run.promoted = true;
        }
      }
    }
    result.steps.push_back(std::move(step));
  }

  for (auto& [value, cand] : candidates) {
    cand.min_measure = cand.evidence.front().measure;
    for (const auto& e : cand.evidence) {
      cand.min_measure = min_of(cand.min_measure, e.measure);
    }
    result.candidates.push_back(std::move(cand));
  }
  return result;
}

SubgroupZ2 close_subgroup(const std::vector<CandidateValue>& candidates) {
  std::vector<Vec2> generators;
  generators.reserve(candidates.size());
  for (const auto& c : candidates) {
    generators.push_back({c.value.first, c.value.second});
  }
  return SubgroupZ2::generated_by(generators);
}

ClassificationReport classify(const CocycleContext& ctx, const ClassifyOptions& options,
                              bool alpha_approximate) {
  ClassificationReport report;
  report.alpha = ctx.alpha();
  report.t = ctx.t();
  report.depth = options.depth;
  report.max_q = options.max_q;
  report.delta = options.detect.delta;
  report.window = options.detect.window;
  report.alpha_approximate = alpha_approximate;

  ExpandOptions expand_options;
  expand_options.allow_finite = true;
  expand_options.approximate = alpha_approximate;
  const ConvergentTable table = expand(ctx.alpha(), options.depth, expand_options);
  auto denominators = denominator_set(table);
  if (options.max_q > 0) {
    std::erase_if(denominators, [&](const BigInt& q) { return q > options.max_q; });
  }
  report.approximability = is_badly_approximable(table);
  report.epsilon_theta_table = epsilon_theta_table(ctx, denominators, options.detect.threads);
  for (const auto q : to_int64(denominators)) {
    (q % 2 != 0 ? report.odd_sequence : report.even_sequence).push_back(q);
  }

  report.odd = detect(report.odd_sequence, ctx, options.detect);
  std::vector<CandidateValue> all = report.odd.candidates;
  if (options.include_even) {
    report.even = detect(report.even_sequence, ctx, options.detect);
    all.insert(all.end(), report.even->candidates.begin(), report.even->candidates.end());
  }
  report.subgroup = close_subgroup(all);

  report.t_in_z_alpha = ctx.t_in_z_alpha();
  report.t_in_z_alpha_plus_half = ctx.t_in_z_alpha_plus_half();
  if (report.t_in_z_alpha) {
    report.expected = SubgroupClass::Diagonal;
    report.basis = PredictionBasis::ExactMembership;
  } else if (report.t_in_z_alpha_plus_half) {
    report.expected = SubgroupClass::AntiDiagonal;
    report.basis = PredictionBasis::ExactMembership;
  } else {
    report.expected = SubgroupClass::FullG;
    report.basis = report.approximability.badly_approximable ? PredictionBasis::BadlyApproximable
                                                             : PredictionBasis::Generic;
  }
  report.agreement = report.subgroup.classification() == report.expected;
  return report;
}

LimsupReport limsup_criterion(const CocycleContext& ctx, std::size_t depth) {
  if (depth < 3) {
    throw PreconditionUnmet("limsup criterion needs depth >= 3");
  }
  ExpandOptions expand_options;
  expand_options.allow_finite = true;
  const auto denominators = denominator_set(expand(ctx.alpha(), depth, expand_options));
  LimsupReport report;
  report.table = epsilon_theta_table(ctx, denominators);
  const std::size_t tail = (report.table.size() + 2) / 3;
  const std::size_t first = report.table.size() - tail;
  report.best_delta = report.table[first].min_value();
  for (std::size_t i = first; i < report.table.size(); ++i) {
    report.best_delta = min_of(report.best_delta, report.table[i].min_value());
    report.witnesses.push_back(report.table[i].q);
  }
  report.holds_empirically = report.best_delta.sign() > 0;
  return report;
}

DecayReport decay_diagnosis(const CocycleContext& ctx, std::size_t depth) {
  if (depth < 5) {
    throw PreconditionUnmet("decay diagnosis needs depth >= 5");
  }
  ExpandOptions expand_options;
  expand_options.allow_finite = true;
  const ConvergentTable table = expand(ctx.alpha(), depth, expand_options);
  if (!is_badly_approximable(table).badly_approximable) {
    throw PreconditionUnmet("alpha is not known to be badly approximable");
  }
  DecayReport report;
  report.table = epsilon_theta_table(ctx, denominator_set(table));
  const std::size_t tail = (report.table.size() + 2) / 3;
  const std::size_t first = report.table.size() - tail;

  auto stable_zero = [&](auto value_of, auto argmin_of) -> std::optional<std::int64_t> {
    const std::int64_t w = argmin_of(report.table[first]);
    for (std::size_t i = first; i < report.table.size(); ++i) {
      if (!value_of(report.table[i]).is_zero() || argmin_of(report.table[i]) != w) {
        return std::nullopt;
      }
    }
    return w;
  };
  if (auto i = stable_zero([](const EpsilonTheta& e) { return e.epsilon; },
                           [](const EpsilonTheta& e) { return e.i_q; })) {
    // epsilon = 0 at i means -t - i alpha is an integer: t = <-i alpha>.
    report.stability = ArgminStability::IConstant;
    report.witness = -*i;
    report.confirmed = ctx.t_in_z_alpha() == report.witness;
  } else if (auto j = stable_zero([](const EpsilonTheta& e) { return e.theta; },
                                  [](const EpsilonTheta& e) { return e.j_q; })) {
    report.stability = ArgminStability::JConstant;
    report.witness = -*j;
    report.confirmed = ctx.t_in_z_alpha_plus_half() == report.witness;
  }
  return report;
}

}  // namespace essval
