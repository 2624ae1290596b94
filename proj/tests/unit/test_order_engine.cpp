#include "doctest.h"

#include <random>

#include "dice/errors.hpp"
#include "dice/level_quotient.hpp"
#include "dice/order_engine.hpp"
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

DiceConfig alternating() {
  return parse_config(
      "dice v1\nprefix 0 cycle 2\n"
      "level p=2 rank=3\npoints 110 011\n"
      "level p=3 rank=2\npoints 11 12 22\n");
}

/// Every word over the alphabet of length <= max_len, as letter lists.
std::vector<std::vector<GeneratorLetter>> all_words(const std::vector<GeneratorLetter>& alphabet, int max_len) {
  std::vector<std::vector<GeneratorLetter>> out{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& a : alphabet) {
        auto next = out[i];
        next.push_back(a);
        out.push_back(std::move(next));
      }
    }
    begin = end;
  }
  return out;
}

bool smooth(std::uint64_t n, const std::vector<std::uint32_t>& primes) {
  for (auto p : primes) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

}  // namespace

TEST_CASE("spine orders") {
  CHECK(spine_order(tetrahedron().config, 1) == 2);
  CHECK(spine_order(c3_square_ddmin().config, 1) == 3);
  CHECK(spine_order(c3_square_ddmin().config, 9) == 3);
  CHECK(spine_order(alternating(), 1) == 6);
  CHECK(spine_order(alternating(), 2) == 6);
  CHECK_THROWS_AS(spine_order(alternating(), 0), ConfigError);

  const DiceGroup g(alternating());
  const auto w = g.parse(1, "w");
  CHECK(is_trivial(g, g.power(w, 6)));
  CHECK_FALSE(is_trivial(g, g.power(w, 2)));
  CHECK_FALSE(is_trivial(g, g.power(w, 3)));
  CHECK(order(g, w).order() == 6);
}

TEST_CASE("small orders") {
  const auto& g = tetra();
  CHECK(order(g, g.identity(1)).order() == 1);
  CHECK(order(g, g.parse(1, "w")).order() == 2);
  CHECK(order(g, g.parse(1, "a1")).order() == 2);
  const auto wa = order(g, g.parse(1, "w a1"));
  CHECK(wa.order() == 4);
  CHECK(wa.to_string() == "4 = 2^2");
  CHECK(order(g, g.parse(1, "a1 a2")).order() == 2);
  CHECK(brute_force_order(g, g.parse(1, "a1"), 8).order() == 2);
  CHECK(brute_force_order(g, g.parse(1, "w a1"), 8).order() == 4);
  CHECK(brute_force_order(g, g.parse(1, "w a1"), 3).reason() == OrderResult::Reason::Bound);

  const auto w0w3 = g.multiply(w_k(g, 0), w_k(g, 3));
  const auto r = order(g, w0w3);
  CHECK(4 % r.order() == 0);
  CHECK(r == brute_force_order(g, w0w3, 64));
}

TEST_CASE("exhaustive agreement with the oracle") {
  const std::vector<GeneratorLetter> tetra_alphabet{GeneratorLetter::rooted(1), GeneratorLetter::rooted(2),
                                                    GeneratorLetter::rooted(3), GeneratorLetter::directed()};
  const std::vector<GeneratorLetter> c3_alphabet{GeneratorLetter::rooted(1), GeneratorLetter::rooted(2),
                                                 GeneratorLetter::directed()};
  struct Case {
    const DiceGroup* group;
    const std::vector<GeneratorLetter>* alphabet;
    int len;
  };
  for (const Case& c : {Case{&tetra(), &tetra_alphabet, 4}, Case{&c3(), &c3_alphabet, 3}}) {
    OrderContext ctx(*c.group);
    EvalContext eval;
    for (const auto& word : all_words(*c.alphabet, c.len)) {
      const auto x = c.group->from_word(1, word);
      const auto fast = order(*c.group, x, ctx);
      const auto slow = brute_force_order(*c.group, x, 256, eval);
      CHECK_MESSAGE(fast == slow, format_word(word));
    }
  }
}

TEST_CASE("properties on sampled words") {
  std::mt19937_64 rng(31);
  for (const DiceConfig& cfg : {tetrahedron().config, c3_square_ddmin().config, c3_mixed_start().config, alternating()}) {
    const DiceGroup g(cfg);
    OrderContext ctx(g);
    const auto primes = cfg.primes();
    for (int k = 0; k < 60; ++k) {
      const auto x = sample_element(g, 1, 4, rng);
      const auto r = order(g, x, ctx);
      REQUIRE(r.is_finite());
      CHECK(smooth(r.order(), primes));
      CHECK(is_trivial(g, g.power(x, r.order()), ctx.eval()));
      for (auto p : primes) {
        if (r.order() % p == 0) CHECK_FALSE(is_trivial(g, g.power(x, r.order() / p), ctx.eval()));
      }
      if (x.head() != 0) {
        const std::uint32_t p = g.prime(1);
        CHECK(r.order() == p * order(g, g.power(x, p), ctx).order());
      }
      // Warm memo gives the same answer as a fresh one.
      CHECK(order(g, x, ctx) == order(g, x));
      for (int n = 1; n <= 3; ++n) {
        const BigInt perm_order = project(g, x, n).order();
        CHECK(BigInt(r.order()) % perm_order == 0);
      }
    }
  }
}

TEST_CASE("limits surface as exceeded") {
  const auto& g = tetra();
  OrderContext tight(g, {1, 1000});
  const auto r = order(g, g.parse(1, "w a1 w a2 w a3"), tight);
  CHECK_FALSE(r.is_finite());
  CHECK(r.reason() == OrderResult::Reason::Depth);
  CHECK(r.to_string() == "EXCEEDED(depth)");
  OrderContext small(g, {100, 1});
  CHECK(order(g, g.parse(1, "w a1 w a2 w a3"), small).reason() == OrderResult::Reason::MemoEntries);
  CHECK_THROWS_AS(OrderContext(g, {0, 10}), ConfigError);
  CHECK(default_limits(tetrahedron().config).max_depth == 20);
  CHECK(default_limits(tetrahedron().config).max_memo == 1'000'000);
}

TEST_CASE("factorization") {
  CHECK(factor_over(12, {2, 3}) == std::vector<std::pair<std::uint32_t, int>>{{2, 2}, {3, 1}});
  CHECK(factor_over(1, {2}).empty());
  CHECK_THROWS_AS(factor_over(10, {2, 3}), std::logic_error);
}
