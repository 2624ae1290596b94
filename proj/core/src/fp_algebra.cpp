#include "dice/fp_algebra.hpp"

#include <bit>
#include <utility>

namespace dice {

namespace {

constexpr std::uint64_t kMaxPackedSize = std::uint64_t{1} << 31;

char digit_char(std::uint32_t d) {
  return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10);
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw Error("inverse_mod: zero has no inverse");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

CubeShape::CubeShape(std::uint32_t p, std::uint32_t rank) : p_(p), rank_(rank) {
  if (!is_prime(p)) throw NonPrimeError("modulus " + std::to_string(p) + " is not prime");
  if (rank < 1) throw ShapeError("rank must be at least 1");
  if (rank > 31) throw CapacityError("rank " + std::to_string(rank) + " too large");
  std::uint64_t size = 1;
  powers_.reserve(rank);
  for (std::uint32_t j = 0; j < rank; ++j) {
    powers_.push_back(static_cast<std::uint32_t>(size));
    size *= p;
    if (size > kMaxPackedSize) {
      throw CapacityError("cube C_" + std::to_string(p) + "^" + std::to_string(rank) +
                          " too large to pack");
    }
  }
  size_ = size;
}

PointCode CubeShape::add(PointCode u, PointCode v) const noexcept {
  if (p_ == 2) return u ^ v;
  PointCode out = 0;
  for (std::uint32_t j = 0; j < rank_; ++j) {
    const std::uint32_t d = (u % p_ + v % p_) % p_;
    out += d * powers_[j];
    u /= p_;
    v /= p_;
  }
  return out;
}

PointCode CubeShape::negate(PointCode u) const noexcept {
  if (p_ == 2) return u;
  PointCode out = 0;
  for (std::uint32_t j = 0; j < rank_; ++j) {
    const std::uint32_t d = u % p_;
    out += ((p_ - d) % p_) * powers_[j];
    u /= p_;
  }
  return out;
}

PointCode CubeShape::scale(std::uint32_t c, PointCode u) const noexcept {
  c %= p_;
  PointCode out = 0;
  for (std::uint32_t j = 0; j < rank_; ++j) {
    const std::uint64_t d = (std::uint64_t{u % p_} * c) % p_;
    out += static_cast<PointCode>(d) * powers_[j];
    u /= p_;
  }
  return out;
}

PointCode CubeShape::basis(std::uint32_t j) const {
  if (j < 1 || j > rank_) {
    throw ShapeError("basis index " + std::to_string(j) + " outside 1.." +
                     std::to_string(rank_));
  }
  return powers_[j - 1];
}

std::uint32_t CubeShape::support_mask(PointCode u) const noexcept {
  std::uint32_t mask = 0;
  for (std::uint32_t j = 0; j < rank_; ++j) {
    if (u % p_ != 0) mask |= 1u << j;
    u /= p_;
  }
  return mask;
}

std::string CubeShape::format(PointCode u) const {
  std::string s(rank_, '0');
  for (std::uint32_t j = 0; j < rank_; ++j) {
    s[j] = digit_char(u % p_);
    u /= p_;
  }
  return s;
}

PointCode CubeShape::parse(std::string_view literal) const {
  if (literal.size() != rank_) {
    throw ParseError("point literal '" + std::string(literal) + "' must have " +
                     std::to_string(rank_) + " digits");
  }
  PointCode out = 0;
  for (std::uint32_t j = 0; j < rank_; ++j) {
    const int d = digit_value(literal[j]);
    if (d < 0 || static_cast<std::uint32_t>(d) >= p_) {
      throw ParseError("point literal '" + std::string(literal) +
                       "' has a digit outside base " + std::to_string(p_));
    }
    out += static_cast<PointCode>(d) * powers_[j];
  }
  return out;
}

void CubeShape::require_enumerable() const {
  if (size_ > kEnumerationCap) {
    throw CapacityError("cube with " + std::to_string(size_) +
                        " points exceeds the enumeration cap");
  }
}

CubePoint::CubePoint(CubeShape shape, std::vector<std::uint32_t> coords)
    : shape_(std::move(shape)), code_(0) {
  if (coords.size() != shape_.rank()) {
    throw ShapeError("expected " + std::to_string(shape_.rank()) + " coordinates, got " +
                     std::to_string(coords.size()));
  }
  PointCode scale = 1;
  for (std::uint32_t c : coords) {
    if (c >= shape_.p()) throw ShapeError("coordinate outside [0, p)");
    code_ += c * scale;
    scale *= shape_.p();
  }
}

CubePoint::CubePoint(CubeShape shape, PointCode code) : shape_(std::move(shape)), code_(code) {
  if (!shape_.contains(code)) throw ShapeError("point code outside the cube");
}

std::vector<std::uint32_t> CubePoint::coords() const {
  std::vector<std::uint32_t> out(shape_.rank());
  for (std::uint32_t j = 1; j <= shape_.rank(); ++j) out[j - 1] = shape_.coord(code_, j);
  return out;
}

std::uint32_t CubePoint::coord(std::uint32_t j) const {
  if (j < 1 || j > shape_.rank()) throw ShapeError("coordinate index out of range");
  return shape_.coord(code_, j);
}

CubePoint CubePoint::scaled(std::uint32_t c) const { return {shape_, shape_.scale(c, code_)}; }

CubePoint operator+(const CubePoint& u, const CubePoint& v) {
  if (!(u.shape_ == v.shape_)) throw ShapeError("cannot add points of different cubes");
  return {u.shape_, u.shape_.add(u.code_, v.code_)};
}

CubePoint add(const CubePoint& u, const CubePoint& v) { return u + v; }

bool Line::contains(const CubePoint& v) const {
  for (const auto& pt : points) {
    if (pt == v) return true;
  }
  return false;
}

PointCode canonical_direction(const CubeShape& shape, PointCode v) {
  if (v == 0) throw DegenerateLine("the zero vector spans no line");
  for (std::uint32_t j = 1; j <= shape.rank(); ++j) {
    const std::uint32_t c = shape.coord(v, j);
    if (c != 0) return shape.scale(inverse_mod(c, shape.p()), v);
  }
  return v;  // unreachable
}

namespace {

Line make_line(const CubeShape& shape, PointCode direction) {
  Line line{CubePoint(shape, direction), {}};
  line.points.reserve(shape.p());
  for (std::uint32_t c = 0; c < shape.p(); ++c) {
    line.points.emplace_back(shape, shape.scale(c, direction));
  }
  return line;
}

}  // namespace

std::vector<Line> lines_through_identity(const CubeShape& shape) {
  shape.require_enumerable();
  std::vector<Line> lines;
  lines.reserve((shape.size() - 1) / (shape.p() - 1));
  for (PointCode v = 1; v < shape.size(); ++v) {
    if (canonical_direction(shape, v) == v) lines.push_back(make_line(shape, v));
  }
  return lines;
}

Line line_of(const CubePoint& v) {
  return make_line(v.shape(), canonical_direction(v.shape(), v.code()));
}

FaceIndexSet FaceIndexSet::of(const std::vector<std::uint32_t>& indices) {
  std::uint32_t mask = 0;
  for (std::uint32_t j : indices) {
    if (j < 1 || j > 32) throw ShapeError("face index " + std::to_string(j) + " out of range");
    mask |= 1u << (j - 1);
  }
  return FaceIndexSet(mask);
}

std::vector<std::uint32_t> FaceIndexSet::indices() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t j = 0; j < 32; ++j) {
    if ((mask_ >> j) & 1u) out.push_back(j + 1);
  }
  return out;
}

std::size_t FaceIndexSet::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(mask_));
}

std::uint32_t FaceIndexSet::max_index() const noexcept {
  return mask_ == 0 ? 0 : 32 - static_cast<std::uint32_t>(std::countl_zero(mask_));
}

std::string FaceIndexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (auto j : indices()) {
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  return s + "}";
}

FaceIndexSet support(const CubePoint& v) {
  return FaceIndexSet(v.shape().support_mask(v.code()));
}

bool face_contains(const FaceIndexSet& face, const CubePoint& v) {
  if (face.max_index() > v.shape().rank()) {
    throw ShapeError("face index " + std::to_string(face.max_index()) +
                     " exceeds rank " + std::to_string(v.shape().rank()));
  }
  return support(v).subset_of(face);
}

}  // namespace dice
