#include "essval/serialize.hpp"

#include <limits>
#include <ostream>

namespace essval {

namespace {

constexpr int kDigits = 50;

const char* status_name(Approximability a) {
  switch (a) {
    case Approximability::Periodic:
      return "periodic";
    case Approximability::DepthLimited:
      return "depth-limited";
    case Approximability::NotApplicable:
      return "not-applicable";
  }
  return "not-applicable";
}

Json pair_json(PairValue v) { return Json::array({v.first, v.second}); }

}  // namespace

Json integer_json(const BigInt& n) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  if (n >= lo && n <= hi) {
    return n.convert_to<std::int64_t>();
  }
  return n.str();
}

Json real_json(const RealValue& v) {
  return Json{{"exact", v.to_string()}, {"decimal", v.to_decimal(kDigits)}};
}

Json to_json(const ConvergentTable& table) {
  Json j;
  j["alpha"] = real_json(table.alpha);
  j["approximate"] = table.approximate;
  j["finite"] = table.finite;
  j["a0"] = integer_json(table.a0);
  Json quotients = Json::array();
  for (const auto& a : table.quotients) {
    quotients.push_back(integer_json(a));
  }
  j["quotients"] = quotients;
  Json convergents = Json::array();
  for (const auto& c : table.convergents) {
    convergents.push_back({{"k", c.k}, {"p", integer_json(c.p)}, {"q", integer_json(c.q)}});
  }
  j["convergents"] = convergents;
  Json denominators = Json::array();
  for (const auto& q : denominator_set(table)) {
    denominators.push_back(integer_json(q));
  }
  j["denominators"] = denominators;
  if (table.period) {
    Json cycle = Json::array();
    for (const auto& a : table.period->cycle) {
      cycle.push_back(integer_json(a));
    }
    j["period"] = {{"start", table.period->start}, {"cycle", cycle}};
  }
  const auto report = is_badly_approximable(table);
  j["badly_approximable"] = report.badly_approximable;
  j["max_quotient"] = integer_json(report.max_quotient);
  j["approximability"] = status_name(report.status);
  return j;
}

Json to_json(const EpsilonTheta& et) {
  return Json{{"q", et.q},
              {"epsilon", real_json(et.epsilon)},
              {"theta", real_json(et.theta)},
              {"i_q", et.i_q},
              {"j_q", et.j_q}};
}

Json to_json(const ConstancyPartition& partition) {
  Json j;
  j["q"] = partition.q;
  j["with_t"] = partition.with_t;
  j["merged_count"] = partition.merged_count;
  j["verified_intervals"] = partition.verified_intervals;
  Json rows = Json::array();
  for (const auto& iv : partition.intervals) {
    rows.push_back({{"left", real_json(iv.left.value())},
                    {"right", real_json(iv.right.value())},
                    {"length", real_json(iv.length)},
                    {"a_q(x)", iv.value.first},
                    {"a_q(x+t)", iv.value.second}});
  }
  j["intervals"] = rows;
  return j;
}

Json to_json(const SubgroupZ2& subgroup) {
  Json basis = Json::array();
  for (const auto& v : subgroup.basis()) {
    basis.push_back(Json::array({v.x, v.y}));
  }
  return Json{{"basis", basis}, {"classification", to_string(subgroup.classification())}};
}

Json to_json(const CandidateValue& candidate) {
  Json evidence = Json::array();
  for (const auto& e : candidate.evidence) {
    evidence.push_back({{"q", e.q}, {"measure", real_json(e.measure)}});
  }
  return Json{{"value", pair_json(candidate.value)},
              {"min_measure", real_json(candidate.min_measure)},
              {"evidence", evidence}};
}

Json to_json(const ClassificationReport& report) {
  Json j;
  j["alpha"] = real_json(report.alpha);
  j["t"] = real_json(report.t.value());
  j["depth"] = report.depth;
  if (report.max_q > 0) {
    j["max_q"] = report.max_q;
  }
  j["delta"] = real_json(report.delta);
  j["window"] = report.window;
  if (report.alpha_approximate) {
    j["warning"] = "alpha is a rational truncation; results are approximate";
  }
  Json table = Json::array();
  for (const auto& et : report.epsilon_theta_table) {
    table.push_back(to_json(et));
  }
  j["epsilon_theta_table"] = table;
  j["odd_sequence"] = report.odd_sequence;
  Json candidates = Json::array();
  for (const auto& c : report.odd.candidates) {
    candidates.push_back(to_json(c));
  }
  j["candidates"] = candidates;
  if (report.even) {
    j["even_sequence"] = report.even_sequence;
    Json even = Json::array();
    for (const auto& c : report.even->candidates) {
      even.push_back(to_json(c));
    }
    j["even_candidates"] = even;
  }
  j["subgroup"] = to_json(report.subgroup);
  auto optional_json = [](const std::optional<std::int64_t>& v) {
    return v ? Json(*v) : Json(nullptr);
  };
  j["predicate"] = {{"t_in_Zalpha", report.t_in_z_alpha.has_value()},
                    {"t_in_Zalpha_witness", optional_json(report.t_in_z_alpha)},
                    {"t_in_Zalpha_plus_half", report.t_in_z_alpha_plus_half.has_value()},
                    {"t_in_Zalpha_plus_half_witness", optional_json(report.t_in_z_alpha_plus_half)},
                    {"badly_approximable", report.approximability.badly_approximable},
                    {"approximability", status_name(report.approximability.status)}};
  j["expected"] = to_string(report.expected);
  j["basis"] = to_string(report.basis);
  j["agreement"] = report.agreement;
  return j;
}

void write_csv(std::ostream& os, const ConstancyPartition& partition) {
  os << "left,left_decimal,right,right_decimal,length,length_decimal,a_q(x),a_q(x+t)\n";
  for (const auto& iv : partition.intervals) {
    os << iv.left.value().to_string() << ',' << iv.left.value().to_decimal(kDigits) << ','
       << iv.right.value().to_string() << ',' << iv.right.value().to_decimal(kDigits) << ','
       << iv.length.to_string() << ',' << iv.length.to_decimal(kDigits) << ',' << iv.value.first
       << ',' << iv.value.second << '\n';
  }
}

void write_csv(std::ostream& os, const std::vector<EpsilonTheta>& table) {
  os << "q,epsilon,epsilon_decimal,theta,theta_decimal,i_q,j_q\n";
  for (const auto& et : table) {
    os << et.q << ',' << et.epsilon.to_string() << ',' << et.epsilon.to_decimal(kDigits) << ','
       << et.theta.to_string() << ',' << et.theta.to_decimal(kDigits) << ',' << et.i_q << ','
       << et.j_q << '\n';
  }
}

}  // namespace essval
