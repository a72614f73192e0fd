#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "essval/real_value.hpp"

namespace essval {

struct ParsedValue {
  RealValue value;
  /// True when a transcendental constant was replaced by a rational truncation.
  bool approximate{false};
};

/// Parses an arithmetic expression over integers, decimals, sqrt(...), and the
/// truncated constants `pi` and `e`, e.g. `7/3`, `(-1+1*sqrt(5))/2`,
/// `sqrt(2)-1`. When `alpha` is given, the symbol `a` denotes it, so that
/// `3a`, `-5a` and `1/2+2a` are accepted. Throws ParseError.
ParsedValue parse_real(std::string_view text, const std::optional<RealValue>& alpha = std::nullopt);

/// Digits kept when truncating a transcendental constant.
inline constexpr int kTruncationDigits = 40;

}  // namespace essval
