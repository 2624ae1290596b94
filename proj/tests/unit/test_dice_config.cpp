#include "doctest.h"

#include <random>
#include <set>

#include "dice/dice_config.hpp"
#include "dice/errors.hpp"

using namespace dice;

namespace {

const char* kTetra = "dice v1\nprefix 0 cycle 1\nlevel p=2 rank=3\npoints 110 101 011\n";

LevelSpec spec(std::uint32_t p, std::uint32_t n, std::vector<std::string> points) {
  LevelSpec l{CubeShape(p, n), {}};
  for (const auto& s : points) l.defining_points.push_back(l.shape.parse(s));
  return l;
}

DiceConfig random_config(std::mt19937_64& rng) {
  static const std::uint32_t primes[] = {2, 3, 5};
  std::uniform_int_distribution<int> prefix_len(0, 1), cycle_len(1, 2), rank(1, 4), prime(0, 2);
  const int k = prefix_len(rng), m = cycle_len(rng);
  std::vector<CubeShape> shapes;
  for (int i = 0; i < k + m; ++i) {
    std::uint32_t p = primes[prime(rng)];
    std::uint32_t n = static_cast<std::uint32_t>(rank(rng));
    if (p == 5 && n > 3) n = 3;
    shapes.emplace_back(p, n);
  }
  std::vector<LevelSpec> levels;
  for (int i = 0; i < k + m; ++i) {
    const int next = i + 1 < k + m ? i + 1 : k;
    const auto need = shapes[next].rank();
    LevelSpec l{shapes[i], {}};
    std::uniform_int_distribution<PointCode> u(1, static_cast<PointCode>(shapes[i].size() - 1));
    std::set<PointCode> used;
    while (used.size() < need) {
      if (used.size() + 1 >= shapes[i].size()) break;
      const PointCode y = u(rng);
      if (used.insert(y).second) l.defining_points.push_back(y);
    }
    levels.push_back(std::move(l));
  }
  return DiceConfig({levels.begin(), levels.begin() + k}, {levels.begin() + k, levels.end()});
}

}  // namespace

TEST_CASE("parse the tetrahedron config") {
  const DiceConfig c = parse_config(kTetra);
  CHECK(c.prefix_length() == 0);
  CHECK(c.period() == 1);
  CHECK(c.level(7).shape == CubeShape(2, 3));
  CHECK(c.level(7).defining_points == std::vector<PointCode>{3, 5, 6});
  CHECK(c.serialize() == kTetra);
  CHECK(parse_config(c.serialize()) == c);
}

TEST_CASE("comments and blank lines") {
  const DiceConfig c = parse_config("# cube\ndice v1\n\nprefix 0 cycle 1  # one level\nlevel p=2 rank=3\npoints 110 101 011\n");
  CHECK(c == parse_config(kTetra));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_config("dice v1\nprefix 0 cycle 1\nlevel p=2 rank=3\npoints 000 101 011\n"),
                  IdentityPointError);
  CHECK_THROWS_AS(parse_config("dice v1\nprefix 0 cycle 1\nlevel p=2 rank=3\npoints 110 101\n"), ChainError);
  CHECK_THROWS_AS(parse_config("dice v1\nprefix 0 cycle 1\nlevel p=2 rank=3\npoints 110 110 011\n"),
                  DuplicatePointError);
  CHECK_THROWS_AS(parse_config("dice v2\n"), ParseError);
  CHECK_THROWS_AS(parse_config("dice v1\nprefix 0 cycle 1\nlevel p=4 rank=3\npoints 110 101 011\n"), Error);
  try {
    parse_config("dice v1\nprefix 0 cycle 1\nlevel p=2 rank=3\npoints 110 1x1 011\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("level indexing") {
  const DiceConfig c({spec(3, 1, {"1", "2"})}, {spec(3, 2, {"11", "12"}), spec(2, 2, {"10", "01"})});
  CHECK(c.level_class(1) == 1);
  CHECK(c.level_class(2) == 2);
  CHECK(c.level_class(4) == 2);
  CHECK(c.level(4).shape == CubeShape(3, 2));
  CHECK(c.level(5).shape == CubeShape(2, 2));
  CHECK(c.primes() == std::vector<std::uint32_t>{2, 3});
  CHECK(parse_config(c.serialize()) == c);
  CHECK_THROWS_AS(c.level(0), ConfigError);
}

TEST_CASE("ddmin") {
  const DiceConfig tetra = parse_config(kTetra);
  for (int i = 1; i <= 4; ++i) CHECK(check_ddmin(tetra, i).is_lucky());

  const DiceConfig basis({}, {spec(2, 3, {"100", "011", "101"})});
  const auto v = check_ddmin(basis, 1);
  CHECK(v.kind() == LuckyVerdict::Kind::NotLucky);
  REQUIRE(v.witness());
  CHECK(v.witness()->point);

  const DiceConfig c3({}, {spec(3, 2, {"11", "12"})});
  CHECK(check_ddmin(c3, 1).is_lucky());
  CHECK(check_ddmax(c3, 1).is_lucky());
  CHECK(check_ddmax1(c3, 1).kind() == LuckyVerdict::Kind::NotLucky);
}

TEST_CASE("dd and d") {
  // Y_1 = {10, 20} on one line, so J = {1, 2}; Y_2 holds the axis point 10.
  const DiceConfig c({spec(3, 2, {"10", "20"})}, {spec(3, 2, {"10", "11"})});
  CHECK(check_dd(c, 1).kind() == LuckyVerdict::Kind::NotLucky);

  const DiceConfig loop({}, {spec(3, 1, {"1"})});
  const auto v = check_d(loop, 1);
  CHECK(v.kind() == LuckyVerdict::Kind::NotLucky);
  REQUIRE(v.witness());
  CHECK(v.witness()->trail.size() >= 2);

  const DiceConfig tetra = parse_config(kTetra);
  CHECK(check_d(tetra, 1).is_lucky());
  const auto steps = lucky_steps(tetra, 3, Condition::DDMin);
  CHECK(steps.size() == 3);
  for (const auto& s : steps) CHECK(s.is_lucky());
}

TEST_CASE("condition names") {
  CHECK(parse_condition("ddmin") == Condition::DDMin);
  CHECK(parse_condition("ddmax-1") == Condition::DDMax1);
  CHECK(parse_condition("D") == Condition::D);
  CHECK_THROWS(parse_condition("dx"));
  CHECK(condition_name(Condition::DDMax1) == "DDmax-1");
}

TEST_CASE("implication chain on random configs") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  while (checked < 600) {
    DiceConfig c = [&] {
      for (;;) {
        try {
          return random_config(rng);
        } catch (const Error&) {
        }
      }
    }();
    ++checked;
    for (int i = 1; i <= c.class_count(); ++i) {
      const bool ddmin = check_ddmin(c, i).is_lucky();
      const bool ddmax1 = check_ddmax1(c, i).is_lucky();
      const bool ddmax = check_ddmax(c, i).is_lucky();
      const bool dd = check_dd(c, i).is_lucky();
      const auto d = check_d(c, i);
      CHECK(d.kind() != LuckyVerdict::Kind::Undetermined);
      if (ddmin) CHECK(dd);
      if (ddmax) CHECK(dd);
      if (ddmax1) CHECK(ddmax);
      if (dd) CHECK(d.is_lucky());
    }
    // Periodicity of verdicts along the cycle.
    const int i = c.prefix_length() + 1;
    CHECK(check_d(c, i).kind() == check_d(c, i + c.period()).kind());
    CHECK(check_dd(c, i).kind() == check_dd(c, i + c.period()).kind());
    CHECK(parse_config(c.serialize()) == c);
  }
}
