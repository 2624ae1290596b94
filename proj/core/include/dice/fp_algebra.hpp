#pragma once

// Elementary abelian groups F_p^N ("cubes"): points, lines through the
// identity and coordinate faces.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dice/errors.hpp"

namespace dice {

/// Packed form of a point: sum of coord_j * p^(j-1). Doubles as the vertex
/// digit of a tree letter.
using PointCode = std::uint32_t;

/// Enumeration operations refuse shapes with more points than this.
inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t n) noexcept;

/// Inverse of a nonzero residue modulo a prime.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// The pair (p, N) describing C_p^N.
class CubeShape {
 public:
  CubeShape(std::uint32_t p, std::uint32_t rank);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t rank() const noexcept { return rank_; }
  /// p^N, the alphabet size of the corresponding tree level.
  std::uint64_t size() const noexcept { return size_; }

  PointCode add(PointCode u, PointCode v) const noexcept;
  PointCode negate(PointCode u) const noexcept;
  PointCode subtract(PointCode u, PointCode v) const noexcept {
    return add(u, negate(v));
  }
  PointCode scale(std::uint32_t c, PointCode u) const noexcept;

  /// Coordinate j (1-based).
  std::uint32_t coord(PointCode u, std::uint32_t j) const noexcept {
    return (u / powers_[j - 1]) % p_;
  }
  /// The basis vector a_j (1-based).
  PointCode basis(std::uint32_t j) const;
  /// Bitmask of nonzero coordinates, bit j-1 for coordinate j.
  std::uint32_t support_mask(PointCode u) const noexcept;
  bool contains(PointCode u) const noexcept { return u < size_; }

  /// Point literal: rank digits in base p, coordinate 1 first.
  std::string format(PointCode u) const;
  PointCode parse(std::string_view literal) const;

  /// Throws CapacityError when size() exceeds kEnumerationCap.
  void require_enumerable() const;

  friend bool operator==(const CubeShape& a, const CubeShape& b) noexcept {
    return a.p_ == b.p_ && a.rank_ == b.rank_;
  }

 private:
  std::uint32_t p_;
  std::uint32_t rank_;
  std::uint64_t size_;
  std::vector<std::uint32_t> powers_;
};

/// A vector in F_p^N.
class CubePoint {
 public:
  CubePoint(CubeShape shape, std::vector<std::uint32_t> coords);
  CubePoint(CubeShape shape, PointCode code);

  static CubePoint zero(const CubeShape& shape) { return {shape, PointCode{0}}; }
  static CubePoint parse(const CubeShape& shape, std::string_view literal) {
    return {shape, shape.parse(literal)};
  }

  const CubeShape& shape() const noexcept { return shape_; }
  PointCode code() const noexcept { return code_; }
  std::vector<std::uint32_t> coords() const;
  std::uint32_t coord(std::uint32_t j) const;
  bool is_zero() const noexcept { return code_ == 0; }
  std::string to_string() const { return shape_.format(code_); }

  CubePoint scaled(std::uint32_t c) const;
  CubePoint operator-() const { return {shape_, shape_.negate(code_)}; }

  friend CubePoint operator+(const CubePoint& u, const CubePoint& v);
  friend CubePoint operator-(const CubePoint& u, const CubePoint& v) {
    return u + (-v);
  }
  friend bool operator==(const CubePoint& u, const CubePoint& v) noexcept {
    return u.shape_ == v.shape_ && u.code_ == v.code_;
  }
  friend bool operator<(const CubePoint& u, const CubePoint& v) noexcept {
    return u.code_ < v.code_;
  }

 private:
  CubeShape shape_;
  PointCode code_;
};

CubePoint add(const CubePoint& u, const CubePoint& v);

/// A line through the identity: the p multiples of a canonical direction
/// whose first nonzero coordinate is 1.
struct Line {
  CubePoint direction;
  std::vector<CubePoint> points;  // 0*d, 1*d, ..., (p-1)*d

  bool contains(const CubePoint& v) const;
  friend bool operator==(const Line& a, const Line& b) {
    return a.direction == b.direction;
  }
};

/// Canonical direction code of the line through a nonzero point.
PointCode canonical_direction(const CubeShape& shape, PointCode v);

/// All (p^N - 1)/(p - 1) lines, ordered by direction code.
std::vector<Line> lines_through_identity(const CubeShape& shape);

/// The unique line through the identity containing v. Throws DegenerateLine
/// for v = 0.
Line line_of(const CubePoint& v);

/// A set of coordinate axes {1..N}; identifies the face they span.
class FaceIndexSet {
 public:
  FaceIndexSet() = default;
  explicit FaceIndexSet(std::uint32_t mask) : mask_(mask) {}
  static FaceIndexSet of(const std::vector<std::uint32_t>& indices);

  std::uint32_t mask() const noexcept { return mask_; }
  std::vector<std::uint32_t> indices() const;
  std::size_t size() const noexcept;
  bool empty() const noexcept { return mask_ == 0; }
  bool contains_index(std::uint32_t j) const noexcept {
    return j >= 1 && j <= 32 && ((mask_ >> (j - 1)) & 1u);
  }
  bool subset_of(const FaceIndexSet& other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  /// Highest index present, 0 for the empty set.
  std::uint32_t max_index() const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const FaceIndexSet&, const FaceIndexSet&) = default;

 private:
  std::uint32_t mask_ = 0;
};

FaceIndexSet support(const CubePoint& v);

/// True iff v lies in the coordinate face spanned by `face`.
bool face_contains(const FaceIndexSet& face, const CubePoint& v);

}  // namespace dice
