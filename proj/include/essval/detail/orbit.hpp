#pragma once

// Direct orbit enumerations of the rotation x -> x + alpha inside a Frame.

#include <cstdint>
#include <utility>

#include "essval/detail/frame.hpp"

namespace essval::detail {

/// #{0 <= i < n : <x + i*alpha> in [0, 1/2)} for reduced x and alpha.
template <class Int>
std::int64_t count_lower_half(const Frame<Int>& frame, Elem<Int> x, const Elem<Int>& alpha,
                              std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (frame.in_lower_half(x)) {
      ++count;
    }
    frame.advance(x, alpha);
  }
  return count;
}

template <class Int>
struct NormMinimum {
  Elem<Int> value;
  std::int64_t argmin{0};
};

/// min over |j| < q of ||r - j*alpha||, for reduced r and alpha. Ties go to the
/// smaller |j|, then to the negative j.
template <class Int>
NormMinimum<Int> min_norm_over_window(const Frame<Int>& frame, const Elem<Int>& r,
                                      const Elem<Int>& alpha, std::int64_t q) {
  NormMinimum<Int> best{frame.circle_norm(r), 0};
  Elem<Int> forward = r;   // r - j*alpha
  Elem<Int> backward = r;  // r + j*alpha
  for (std::int64_t j = 1; j < q; ++j) {
    frame.advance(backward, alpha);
    frame.retreat(forward, alpha);
    const Elem<Int> neg = frame.circle_norm(backward);
    if (frame.compare(neg, best.value) < 0) {
      best = {neg, -j};
    }
    const Elem<Int> pos = frame.circle_norm(forward);
    if (frame.compare(pos, best.value) < 0) {
      best = {pos, j};
    }
  }
  return best;
}

}  // namespace essval::detail
