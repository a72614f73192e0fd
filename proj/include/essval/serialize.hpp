#pragma once

#include <iosfwd>
#include <vector>

#include "json.hpp"

#include "essval/cf_engine.hpp"
#include "essval/essential_values.hpp"
#include "essval/partition.hpp"

namespace essval {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits are emitted as numbers, larger ones as strings.
Json integer_json(const BigInt& n);
/// {"exact": "(a+b*sqrt(d))/c", "decimal": "<50 digits>"}
Json real_json(const RealValue& v);

Json to_json(const ConvergentTable& table);
Json to_json(const EpsilonTheta& et);
Json to_json(const ConstancyPartition& partition);
Json to_json(const SubgroupZ2& subgroup);
Json to_json(const CandidateValue& candidate);
Json to_json(const ClassificationReport& report);

/// Header plus one row per interval: exact endpoints and length, their
/// decimals, and the pair value.
void write_csv(std::ostream& os, const ConstancyPartition& partition);
void write_csv(std::ostream& os, const std::vector<EpsilonTheta>& table);

}  // namespace essval
