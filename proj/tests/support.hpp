#pragma once

#include <cstdint>
#include <random>

#include "essval/real_value.hpp"

namespace essval::testing {

inline RealValue golden() { return RealValue::surd(-1, 1, 5, 2); }
inline RealValue sqrt2_minus_1() { return RealValue::surd(-1, 1, 2, 1); }
inline RealValue thirteen() { return RealValue::surd(-1, 1, 13, 2); }

inline RealValue rat(std::int64_t p, std::int64_t q) { return RealValue::rational(p, q); }

/// Random element (a + b*sqrt(d))/c of Q(sqrt(d)) with small coefficients.
inline RealValue random_surd(std::mt19937_64& rng, std::int64_t d, std::int64_t bound = 50) {
  std::uniform_int_distribution<std::int64_t> coef(-bound, bound);
  std::uniform_int_distribution<std::int64_t> den(1, bound);
  return RealValue::surd(coef(rng), coef(rng), d, den(rng));
}

/// Random point of [0, 1) in the field of `alpha`: <k/m + s*alpha>.
inline CirclePoint random_point(std::mt19937_64& rng, const RealValue& alpha) {
  std::uniform_int_distribution<std::int64_t> num(0, 996);
  std::uniform_int_distribution<std::int64_t> shift(-40, 40);
  return reduce_mod_1(rat(num(rng), 997) + RealValue(shift(rng)) * alpha);
}

}  // namespace essval::testing
