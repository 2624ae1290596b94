#include "doctest.h"

#include <random>
#include <set>

#include "dice/errors.hpp"
#include "dice/fp_algebra.hpp"

using namespace dice;

namespace {

CubePoint pt(const CubeShape& s, std::vector<std::uint32_t> coords) { return {s, std::move(coords)}; }

}  // namespace

TEST_CASE("point codes are little-endian") {
  CubeShape s(2, 3);
  CHECK(s.parse("110") == 3);
  CHECK(s.parse("101") == 5);
  CHECK(s.parse("011") == 6);
  CHECK(s.format(6) == "011");
  CHECK(pt(s, {1, 1, 0}).code() == 3);
  CHECK(s.basis(2) == 2);
  CHECK(CubeShape(3, 2).parse("12") == 1 + 2 * 3);
  CHECK_THROWS_AS(s.parse("12"), ParseError);
  CHECK_THROWS_AS(s.parse("10"), ParseError);
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(CubeShape(4, 2), NonPrimeError);
  CHECK_THROWS_AS(CubeShape(2, 0), ShapeError);
  CHECK_THROWS_AS(CubeShape(2, 25).require_enumerable(), CapacityError);
  CHECK_NOTHROW(CubeShape(2, 20).require_enumerable());
  CHECK(inverse_mod(2, 3) == 2);
  CHECK(inverse_mod(3, 7) == 5);
}

TEST_CASE("addition") {
  CubeShape s2(2, 3), s3(3, 2);
  CHECK(pt(s2, {1, 1, 0}) + pt(s2, {1, 0, 1}) == pt(s2, {0, 1, 1}));
  const auto v = pt(s2, {1, 0, 1});
  CHECK(v + CubePoint::zero(s2) == v);
  CHECK(pt(s3, {1, 2}) + pt(s3, {2, 2}) == pt(s3, {0, 1}));
  CHECK_THROWS_AS(v + pt(s3, {1, 1}), ShapeError);
  CHECK(add(pt(s3, {1, 2}), -pt(s3, {1, 2})).is_zero());
}

TEST_CASE("lines through the identity") {
  CHECK(lines_through_identity(CubeShape(2, 3)).size() == 7);
  CHECK(lines_through_identity(CubeShape(3, 2)).size() == 4);
  const auto one = lines_through_identity(CubeShape(2, 1));
  REQUIRE(one.size() == 1);
  CHECK(one[0].points.size() == 2);
  CHECK(one[0].points[1].code() == 1);

  CubeShape s3(3, 2);
  const Line l = line_of(pt(s3, {2, 1}));
  CHECK(l.direction == pt(s3, {1, 2}));
  std::set<PointCode> codes;
  for (const auto& q : l.points) codes.insert(q.code());
  CHECK(codes == std::set<PointCode>{s3.parse("00"), s3.parse("12"), s3.parse("21")});

  CubeShape s2(2, 3);
  const Line l2 = line_of(pt(s2, {1, 1, 0}));
  REQUIRE(l2.points.size() == 2);
  CHECK(l2.points[0].is_zero());
  CHECK(l2.points[1] == pt(s2, {1, 1, 0}));
  CHECK_THROWS_AS(line_of(CubePoint::zero(s2)), DegenerateLine);
}

TEST_CASE("support and faces") {
  CubeShape s2(2, 3), s3(3, 2);
  CHECK(support(pt(s2, {1, 1, 0})) == FaceIndexSet::of({1, 2}));
  CHECK(support(CubePoint::zero(s2)).empty());
  CHECK(support(pt(s3, {0, 2})) == FaceIndexSet::of({2}));
  CHECK(face_contains(FaceIndexSet::of({1, 2}), pt(s2, {1, 1, 0})));
  CHECK_FALSE(face_contains(FaceIndexSet::of({1, 2}), pt(s2, {0, 1, 1})));
  CHECK(face_contains(FaceIndexSet{}, CubePoint::zero(s2)));
  CHECK_THROWS_AS(face_contains(FaceIndexSet::of({4}), pt(s2, {1, 0, 0})), ShapeError);
  CHECK(FaceIndexSet::of({3, 1}).to_string() == "{1,3}");
}

TEST_CASE("lines partition the nonzero points") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    CubeShape s(p, n);
    std::vector<int> hits(s.size(), 0);
    for (const auto& l : lines_through_identity(s)) {
      CHECK(l.points.size() == p);
      for (const auto& q : l.points) {
        if (!q.is_zero()) ++hits[q.code()];
      }
    }
    for (PointCode u = 1; u < s.size(); ++u) CHECK(hits[u] == 1);
  }
}

TEST_CASE("line_of is invariant under scaling") {
  std::mt19937_64 rng(7);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {3, 6}, {5, 3}, {7, 2}}) {
    CubeShape s(p, n);
    std::uniform_int_distribution<PointCode> u(1, static_cast<PointCode>(s.size() - 1));
    std::uniform_int_distribution<std::uint32_t> c(1, p - 1);
    for (int k = 0; k < 1000; ++k) {
      const CubePoint v(s, u(rng));
      const auto scaled = v.scaled(c(rng));
      CHECK(line_of(v) == line_of(scaled));
      CHECK(line_of(v).contains(scaled));
    }
  }
}

TEST_CASE("face membership is monotone") {
  std::mt19937_64 rng(11);
  CubeShape s(3, 4);
  std::uniform_int_distribution<PointCode> u(0, static_cast<PointCode>(s.size() - 1));
  std::uniform_int_distribution<std::uint32_t> mask(0, 15);
  for (int k = 0; k < 2000; ++k) {
    const CubePoint v(s, u(rng));
    const FaceIndexSet f(mask(rng));
    const FaceIndexSet g(f.mask() | mask(rng));
    if (face_contains(f, v)) CHECK(face_contains(g, v));
    CHECK(face_contains(f, v) == support(v).subset_of(f));
  }
}
