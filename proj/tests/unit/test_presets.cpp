#include "doctest.h"

#include "dice/errors.hpp"
#include "dice/level_quotient.hpp"
#include "dice/order_engine.hpp"
#include "dice/presets.hpp"

using namespace dice;

TEST_CASE("config texts round trip") {
  for (const auto& name : preset_names()) {
    const Preset p = preset_by_name(name);
    CHECK(p.name == name);
    CHECK(parse_config(p.config_text()) == p.config);
  }
  CHECK(tetrahedron().config_text() == "dice v1\nprefix 0 cycle 1\nlevel p=2 rank=3\npoints 110 101 011\n");
  CHECK(c3_square_ddmin().config_text() == "dice v1\nprefix 0 cycle 1\nlevel p=3 rank=2\npoints 11 12\n");
  CHECK(c3_mixed_start().config_text() ==
        "dice v1\nprefix 1 cycle 1\nlevel p=3 rank=1\npoints 1 2\nlevel p=3 rank=2\npoints 11 12\n");
  CHECK_THROWS_AS(preset_by_name("cube"), ConfigError);
}

TEST_CASE("tetrahedron names and colours") {
  const Preset p = tetrahedron();
  CHECK(p.word("a") == "a1");
  CHECK(p.word("w") == "w");
  CHECK_THROWS_AS(p.word("d"), ConfigError);
  CHECK(is_red(5));
  CHECK_FALSE(is_red(7));
  for (auto v : red_vertices()) CHECK(is_red(v));
  for (auto v : black_vertices()) CHECK_FALSE(is_red(v));

  const DiceGroup g(p.config);
  CHECK(w_k(g, 3) == g.parse(1, "a1 a2 w a1 a2"));
  CHECK(w_k(g, 0) == g.parse(1, "w"));
}

TEST_CASE("the Klein group keeps the red tetrahedron") {
  const DiceGroup g(tetrahedron().config);
  for (const char* word : {"1", "a1 a2", "a1 a3", "a2 a3"}) {
    const auto h = g.parse(1, word);
    for (auto v : red_vertices()) {
      const std::vector<PointCode> path{v};
      CHECK(is_red(g.act(h, path)[0]));
    }
  }
}

TEST_CASE("red and black conjugates commute") {
  const DiceGroup g(tetrahedron().config);
  EvalContext ctx;
  for (auto k : red_vertices()) {
    for (auto s : black_vertices()) {
      const auto wk = w_k(g, k), ws = w_k(g, s);
      CHECK(equals(g, g.multiply(wk, ws), g.multiply(ws, wk), ctx));
    }
  }
}

TEST_CASE("c3 presets") {
  const Preset sq = c3_square_ddmin();
  for (int i = 1; i <= 4; ++i) CHECK(check_ddmin(sq.config, i).is_lucky());
  CHECK(spine_order(sq.config, 1) == 3);

  const Preset mx = c3_mixed_start();
  CHECK(check_ddmin(mx.config, 1).kind() == LuckyVerdict::Kind::NotLucky);
  const DiceGroup g(mx.config);
  const std::vector<LevelPermutation> top{project(g, g.parse(1, "a1"), 1), project(g, g.parse(1, "w"), 1)};
  CHECK(group_order(top) == 3);
  const auto r = order(g, g.parse(1, "a1 w"));
  REQUIRE(r.is_finite());
  CHECK(r == brute_force_order(g, g.parse(1, "a1 w"), 729));
  std::uint64_t n = r.order();
  while (n % 3 == 0) n /= 3;
  CHECK(n == 1);
}

TEST_CASE("proper generator subsets give finite quotients") {
  const DiceGroup g(tetrahedron().config);
  const std::vector<std::vector<std::string>> subsets{{"a1", "a2", "a3"}, {"w", "a1", "a2"}, {"w", "a1", "a3"},
                                                      {"w", "a2", "a3"}};
  for (const auto& s : subsets) {
    std::vector<ReducedWord> words;
    for (const auto& w : s) words.push_back(g.parse(1, w));
    const auto r = stabilized_order(g, words, 5);
    CHECK(r.stabilized);
  }
}
