#include "dice/presets.hpp"

#include <bit>

#include "dice/errors.hpp"

namespace dice {

namespace {

LevelSpec level(std::uint32_t p, std::uint32_t rank, std::initializer_list<std::string_view> points) {
  LevelSpec spec{CubeShape(p, rank), {}};
  for (auto literal : points) spec.defining_points.push_back(spec.shape.parse(literal));
  return spec;
}

LevelSpec c3_square_level() { return level(3, 2, {"11", "12"}); }

}  // namespace

const std::string& Preset::word(std::string_view generator) const {
  for (const auto& [n, w] : names) {
    if (n == generator) return w;
  }
  throw ConfigError("preset " + name + " has no generator named " + std::string(generator));
}

Preset tetrahedron() {
  Preset p{"tetrahedron", DiceConfig({}, {level(2, 3, {"110", "101", "011"})}), {}, {}, {}};
  p.names = {{"a", "a1"}, {"b", "a2"}, {"c", "a3"}, {"w", "w"}};
  p.expectations = {
      {"order(w), order(a1), order(a2), order(a3)", "2"},
      {"order(w a1)", "4"},
      {"order(a1 a2)", "2"},
      {"|<a1, w>| at levels 2..4", "8"},
      {"|<a1, a2, w>| from level 3", "256"},
      {"|<a1, a2, a3>| at every level", "8"},
      {"[w_k, w_s] for k red, s black", "trivial"},
      {"<w, a1, a2, a3>", "infinite 2-group"},
  };
  p.notes = "red vertices 0 3 5 6 carry the sections a, b, c, w of w";
  return p;
}

Preset c3_square_ddmin() {
  Preset p{"c3-square", DiceConfig({}, {c3_square_level()}), {}, {}, {}};
  p.names = {{"a", "a1"}, {"b", "a2"}, {"w", "w"}};
  p.expectations = {
      {"check ddmin, every level", "Lucky"},
      {"spine_order(1)", "3"},
      {"element orders", "powers of 3"},
  };
  p.notes = "Y = {11, 12} is a choice: one point on each of two lines, support 2 each";
  return p;
}

Preset c3_mixed_start() {
  Preset p{"c3-mixed", DiceConfig({level(3, 1, {"1", "2"})}, {c3_square_level()}), {}, {}, {}};
  p.names = {{"a", "a1"}, {"w", "w"}};
  p.expectations = {
      {"sections of w at 0, 1, 2", "w_2, a_21, a_22"},
      {"|pi_1(G)|", "3"},
      {"order(a1 w)", "power of 3"},
  };
  p.notes = "the prefix line holds both Y points, so ddmin fails at level 1";
  return p;
}

Preset preset_by_name(std::string_view name) {
  if (name == "tetrahedron") return tetrahedron();
  if (name == "c3-square") return c3_square_ddmin();
  if (name == "c3-mixed") return c3_mixed_start();
  throw ConfigError("unknown preset: " + std::string(name));
}

std::vector<std::string> preset_names() { return {"tetrahedron", "c3-square", "c3-mixed"}; }

bool is_red(PointCode vertex) {
  if (vertex > 7) throw ShapeError("tetrahedron vertices are 0..7");
  return std::popcount(vertex) % 2 == 0;
}

std::vector<PointCode> red_vertices() { return {0, 3, 5, 6}; }
std::vector<PointCode> black_vertices() { return {1, 2, 4, 7}; }

ReducedWord w_k(const DiceGroup& group, PointCode k) { return group.spine_conjugate(1, k); }

}  // namespace dice
