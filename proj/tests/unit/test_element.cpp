#include "doctest.h"

#include <random>

#include "dice/errors.hpp"
#include "dice/element.hpp"
#include "dice/presets.hpp"

using namespace dice;

namespace {

const DiceGroup& tetra() {
  static const DiceGroup g(tetrahedron().config);
  return g;
}

const DiceGroup& c3() {
  static const DiceGroup g(c3_square_ddmin().config);
  return g;
}

const DiceGroup& mixed() {
  static const DiceGroup g(c3_mixed_start().config);
  return g;
}

void check_reduced(const DiceGroup& g, const ReducedWord& x) {
  const auto q = g.spine_order(x.level());
  for (std::size_t k = 0; k < x.syllables().size(); ++k) {
    CHECK(x.syllables()[k].exp >= 1);
    CHECK(x.syllables()[k].exp < q);
    if (k > 0) CHECK(x.syllables()[k].gamma != x.syllables()[k - 1].gamma);
  }
}

std::vector<PointCode> random_vertex(const DiceGroup& g, int level, int depth, std::mt19937_64& rng) {
  std::vector<PointCode> v;
  for (int j = 0; j < depth; ++j) {
    std::uniform_int_distribution<PointCode> u(0, static_cast<PointCode>(g.shape(level + j).size() - 1));
    v.push_back(u(rng));
  }
  return v;
}

}  // namespace

TEST_CASE("word grammar") {
  const auto letters = parse_word("w a1^2 a3^-1 w^3");
  REQUIRE(letters.size() == 4);
  CHECK(letters[1] == GeneratorLetter::rooted(1, 2));
  CHECK(letters[2] == GeneratorLetter::rooted(3, -1));
  CHECK(letters[3] == GeneratorLetter::directed(3));
  CHECK(parse_word("1").empty());
  CHECK(format_word(letters) == "w a1^2 a3^-1 w^3");
  CHECK(format_word({}) == "1");
  CHECK_THROWS_AS(parse_word("w b1"), ParseError);
  CHECK_THROWS_AS(parse_word("a0"), ParseError);
  CHECK_THROWS_AS(tetra().parse(1, "a4"), ShapeError);
}

TEST_CASE("from_word reductions") {
  const auto& g = tetra();
  const auto w = g.parse(1, "w");
  CHECK(w.head() == 0);
  REQUIRE(w.syllables().size() == 1);
  CHECK(w.syllables()[0] == Syllable{0, 1});

  const auto waw = g.parse(1, "w a1 w");
  CHECK(waw.head() == 1);
  REQUIRE(waw.syllables().size() == 2);
  CHECK(waw.syllables()[0] == Syllable{1, 1});
  CHECK(waw.syllables()[1] == Syllable{0, 1});
  CHECK(w_length(waw) == 2);

  CHECK(g.parse(1, "w w").is_identity());
  CHECK(w_length(g.parse(1, "a1")) == 0);
  CHECK(w_length(w) == 1);
}

TEST_CASE("multiply and inverse") {
  const auto& g = tetra();
  const auto w = g.parse(1, "w");
  CHECK(g.multiply(w, w).is_identity());
  const auto x = g.parse(1, "w a1 w a2");
  CHECK(g.multiply(x, g.identity(1)) == x);
  CHECK(g.multiply(g.identity(1), x) == x);
  CHECK(g.multiply(x, g.inverse(x)).is_identity());
  CHECK(g.multiply(g.inverse(x), x).is_identity());
  CHECK(g.power(x, 0).is_identity());
  CHECK(g.power(w, 2).is_identity());
  // (wa)^2 = w w^a
  const auto wa = g.parse(1, "w a1");
  CHECK(g.power(wa, 2) == g.multiply(w, g.conjugate(w, g.parse(1, "a1"))));
  CHECK(g.power(wa, 2).head() == 0);
}

TEST_CASE("decompose") {
  const auto& g = tetra();
  const auto d = g.decompose(g.parse(1, "w"));
  CHECK(d.top == 0);
  REQUIRE(d.sections.size() == 4);
  CHECK(*d.section_at(0) == g.parse(2, "w"));
  CHECK(*d.section_at(3) == g.parse(2, "a1"));
  CHECK(*d.section_at(5) == g.parse(2, "a2"));
  CHECK(*d.section_at(6) == g.parse(2, "a3"));
  CHECK(d.section_at(1) == nullptr);

  const auto da = g.decompose(g.parse(1, "a1"));
  CHECK(da.top == 1);
  CHECK(da.sections.empty());

  const auto& m = mixed();
  const auto dm = m.decompose(m.parse(1, "w"));
  CHECK(*dm.section_at(0) == m.parse(2, "w"));
  CHECK(*dm.section_at(1) == m.parse(2, "a1"));
  CHECK(*dm.section_at(2) == m.parse(2, "a2"));
}

TEST_CASE("act") {
  const auto& g = tetra();
  const std::vector<PointCode> v30{3, 0};
  CHECK(g.act(g.parse(1, "w"), v30) == std::vector<PointCode>{3, 1});
  const std::vector<PointCode> v057{0, 5, 7};
  CHECK(g.act(g.identity(1), v057) == v057);
  CHECK(g.act(g.parse(1, "a1"), v057) == std::vector<PointCode>{1, 5, 7});
  const std::vector<PointCode> bad{3, 8};
  try {
    g.act(g.parse(1, "w"), bad);
    FAIL("expected a path error");
  } catch (const PathShapeError& e) {
    CHECK(e.depth() == 2);
  }
  CHECK(parse_vertex("3.0") == v30);
  CHECK(format_vertex(v30) == "3.0");
  CHECK(parse_vertex("").empty());
  CHECK_THROWS_AS(parse_vertex("3..0"), ParseError);
}

TEST_CASE("portrait") {
  const auto& g = tetra();
  const auto w = g.parse(1, "w");
  CHECK(g.portrait(w, 0).labels[0][0] == 0);
  const auto pa = g.portrait(g.parse(1, "a1"), 2);
  CHECK(pa.labels[0][0] == 1);
  for (std::size_t j = 1; j < pa.labels.size(); ++j) {
    for (auto c : pa.labels[j]) CHECK(c == 0);
  }
  const auto pw = g.portrait(w, 1);
  const std::vector<PointCode> expect{0, 0, 0, 1, 0, 2, 4, 0};
  CHECK(pw.labels[1] == expect);
  const std::vector<PointCode> v5{5};
  CHECK(pw.label(v5) == 2);
  CHECK(g.portrait(g.identity(1), 3).all_zero());
}

TEST_CASE("triviality and equality") {
  const auto& g = tetra();
  const auto w = g.parse(1, "w");
  const auto a = g.parse(1, "a1");
  CHECK(is_trivial(g, g.multiply(w, w)));
  CHECK_FALSE(is_trivial(g, a));
  CHECK_FALSE(is_trivial(g, w));
  CHECK(is_trivial(g, g.commutator(w_k(g, 0), w_k(g, 1))));
  const auto wa = g.conjugate(w, a);
  CHECK(equals(g, g.multiply(wa, w), g.multiply(w, wa)));
  CHECK_FALSE(equals(g, g.multiply(w, a), g.multiply(a, w)));
  const auto x = g.parse(1, "w a1 w a2 w");
  CHECK(equals(g, x, x));
}

TEST_CASE("format round trip") {
  std::mt19937_64 rng(5);
  for (const DiceGroup* g : {&tetra(), &c3(), &mixed()}) {
    for (int k = 0; k < 200; ++k) {
      const auto x = sample_element(*g, 1, 6, rng);
      check_reduced(*g, x);
      CHECK(g->parse(1, g->format(x)) == x);
    }
  }
}

TEST_CASE("reduced form is kept by arithmetic") {
  std::mt19937_64 rng(9);
  for (const DiceGroup* g : {&tetra(), &c3(), &mixed()}) {
    for (int k = 0; k < 300; ++k) {
      const auto x = sample_element(*g, 1, 5, rng);
      const auto y = sample_element(*g, 1, 5, rng);
      check_reduced(*g, g->multiply(x, y));
      check_reduced(*g, g->inverse(x));
      CHECK(g->multiply(g->multiply(x, y), g->inverse(y)) == x);
    }
  }
}

TEST_CASE("wreath cocycle") {
  std::mt19937_64 rng(13);
  for (const DiceGroup* g : {&tetra(), &c3(), &mixed()}) {
    EvalContext ctx;
    for (int k = 0; k < 200; ++k) {
      const auto x = sample_element(*g, 1, 4, rng);
      const auto y = sample_element(*g, 1, 4, rng);
      const auto xy = g->multiply(x, y);
      std::uniform_int_distribution<int> depth(0, 4);
      const auto v = random_vertex(*g, 1, depth(rng), rng);
      CHECK(g->act(xy, v) == g->act(x, g->act(y, v)));

      const auto beta = random_vertex(*g, 1, 1, rng)[0];
      const auto y_beta = g->act(y, std::vector<PointCode>{beta})[0];
      const auto lhs = g->section(xy, beta);
      const auto rhs = g->multiply(g->section(x, y_beta), g->section(y, beta));
      CHECK(equals(*g, lhs, rhs, ctx));
    }
  }
}

TEST_CASE("act agrees with the portrait") {
  std::mt19937_64 rng(17);
  const auto& g = tetra();
  for (int k = 0; k < 50; ++k) {
    const auto x = sample_element(g, 1, 4, rng);
    const auto p = g.portrait(x, 3);
    for (int t = 0; t < 20; ++t) {
      const auto v = random_vertex(g, 1, 3, rng);
      const auto image = g.act(x, v);
      for (std::size_t j = 0; j < v.size(); ++j) {
        const std::span<const PointCode> prefix(v.data(), j);
        CHECK(image[j] == g.shape(1 + static_cast<int>(j)).add(v[j], p.label(prefix)));
      }
    }
  }
}

TEST_CASE("conjugation shifts gamma") {
  std::mt19937_64 rng(19);
  for (const DiceGroup* g : {&tetra(), &c3()}) {
    std::uniform_int_distribution<PointCode> u(0, static_cast<PointCode>(g->shape(1).size() - 1));
    for (int k = 0; k < 100; ++k) {
      const PointCode gamma = u(rng), h = u(rng);
      const auto lhs = g->conjugate(g->spine_conjugate(1, gamma), g->rooted(1, h));
      CHECK(equals(*g, lhs, g->spine_conjugate(1, g->shape(1).add(gamma, h))));
    }
  }
}

TEST_CASE("sections do not grow the w-length") {
  std::mt19937_64 rng(23);
  for (const DiceGroup* g : {&tetra(), &c3(), &mixed()}) {
    for (int k = 0; k < 300; ++k) {
      auto x = sample_element(*g, 1, 6, rng);
      x = g->multiply(g->rooted(1, g->shape(1).negate(x.head())), x);  // head 0
      REQUIRE(x.head() == 0);
      std::size_t total = 0;
      for (const auto& [beta, s] : g->decompose(x).sections) total += s.w_length();
      CHECK(total <= x.w_length());
    }
  }
}

TEST_CASE("is_trivial agrees with portraits") {
  std::mt19937_64 rng(29);
  const auto& g = tetra();
  EvalContext ctx;
  int trivial = 0;
  for (int k = 0; k < 500; ++k) {
    // Commutators and squares hit the identity often enough to matter.
    const auto x = sample_element(g, 1, 3, rng);
    const auto y = sample_element(g, 1, 3, rng);
    const auto z = k % 2 ? g.commutator(x, y) : g.power(x, 4);
    const bool t = is_trivial(g, z, ctx);
    trivial += t;
    bool zero = true;
    for (int d = 0; d <= 4 && zero; ++d) zero = g.portrait(z, d).all_zero();
    if (t) CHECK(zero);
    if (!zero) CHECK_FALSE(t);
  }
  CHECK(trivial > 0);
}

TEST_CASE("elements from different levels do not mix") {
  const auto& m = mixed();
  CHECK_THROWS_AS(m.multiply(m.parse(1, "w"), m.parse(2, "w")), LevelMismatch);
  // Levels of one class share their group.
  const auto& g = tetra();
  CHECK(g.multiply(g.parse(1, "w"), g.parse(2, "w")).is_identity());
}
