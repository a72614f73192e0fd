#include "essval/subgroup.hpp"

#include <numeric>
#include <utility>

namespace essval {

std::string to_string(SubgroupClass c) {
  switch (c) {
    case SubgroupClass::TrivialZero:
      return "TrivialZero";
    case SubgroupClass::Diagonal:
      return "Diagonal";
    case SubgroupClass::AntiDiagonal:
      return "AntiDiagonal";
    case SubgroupClass::FullG:
      return "FullG";
    case SubgroupClass::Other:
      return "Other";
  }
  return "Other";
}

SubgroupZ2 SubgroupZ2::generated_by(std::span<const Vec2> generators) {
  // Row reduction on the first coordinate: fold every generator into a pivot
  // with first coordinate gcd(x_i), collecting the leftovers (0, y).
  Vec2 pivot{0, 0};
  std::int64_t tail = 0;  // generator of {y : (0, y) in H}, up to sign
  for (Vec2 v : generators) {
    // Euclid on (pivot, v) by first coordinates.
    while (v.x != 0) {
      const std::int64_t k = pivot.x / v.x;
      pivot = {pivot.x - k * v.x, pivot.y - k * v.y};
      std::swap(pivot, v);
    }
    tail = std::gcd(tail, v.y);
  }
  if (pivot.x < 0) {
    pivot = {-pivot.x, -pivot.y};
  }
  SubgroupZ2 h;
  if (pivot.x == 0) {
    // Every generator had been folded into (0, y) pieces.
    tail = std::gcd(tail, pivot.y);
    if (tail != 0) {
      h.basis_.push_back({0, tail});
    }
    return h;
  }
  if (tail != 0) {
    std::int64_t b = pivot.y % tail;
    if (b < 0) {
      b += tail;
    }
    h.basis_.push_back({pivot.x, b});
    h.basis_.push_back({0, tail});
  } else {
    h.basis_.push_back(pivot);
  }
  return h;
}

bool SubgroupZ2::contains(Vec2 v) const {
  if (basis_.empty()) {
    return v.x == 0 && v.y == 0;
  }
  const Vec2 first = basis_[0];
  if (basis_.size() == 1) {
    if (first.x == 0) {
      return v.x == 0 && v.y % first.y == 0;
    }
    return v.x % first.x == 0 && v.y == (v.x / first.x) * first.y;
  }
  if (v.x % first.x != 0) {
    return false;
  }
  const std::int64_t rest = v.y - (v.x / first.x) * first.y;
  return rest % basis_[1].y == 0;
}

SubgroupClass SubgroupZ2::classification() const {
  if (basis_.empty()) {
    return SubgroupClass::TrivialZero;
  }
  if (basis_.size() == 1) {
    if (basis_[0] == Vec2{1, 1}) {
      return SubgroupClass::Diagonal;
    }
    if (basis_[0] == Vec2{1, -1}) {
      return SubgroupClass::AntiDiagonal;
    }
    return SubgroupClass::Other;
  }
  if (basis_[0] == Vec2{1, 1} && basis_[1] == Vec2{0, 2}) {
    return SubgroupClass::FullG;
  }
  return SubgroupClass::Other;
}

}  // namespace essval
