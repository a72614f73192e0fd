#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace essval {

struct Vec2 {
  std::int64_t x{0};
  std::int64_t y{0};
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

enum class SubgroupClass { TrivialZero, Diagonal, AntiDiagonal, FullG, Other };

std::string to_string(SubgroupClass c);

/// A subgroup of Z^2 in Hermite normal form:
///   rank 0: no basis vectors;
///   rank 1: {(a, b)} with a > 0, or a = 0 and b > 0;
///   rank 2: {(a, b), (0, c)} with a > 0, c > 0 and 0 <= b < c.
/// Every generating set of the same subgroup yields the same basis.
class SubgroupZ2 {
 public:
  SubgroupZ2() = default;

  static SubgroupZ2 generated_by(std::span<const Vec2> generators);

  const std::vector<Vec2>& basis() const { return basis_; }
  std::size_t rank() const { return basis_.size(); }
  SubgroupClass classification() const;
  bool contains(Vec2 v) const;

  friend bool operator==(const SubgroupZ2&, const SubgroupZ2&) = default;

 private:
  std::vector<Vec2> basis_;
};

}  // namespace essval
