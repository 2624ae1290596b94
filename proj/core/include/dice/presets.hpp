#pragma once

// Built-in configurations and their named elements.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dice/dice_config.hpp"
#include "dice/element.hpp"

namespace dice {

struct Expectation {
  std::string claim;  // e.g. "order(w a1)"
  std::string value;
};

struct Preset {
  std::string name;
  DiceConfig config;
  /// Generator names and the words they stand for, e.g. {"a", "a1"}.
  std::vector<std::pair<std::string, std::string>> names;
  std::vector<Expectation> expectations;
  std::string notes;

  std::string config_text() const { return config.serialize(); }
  /// The word for a named generator; throws ConfigError for unknown names.
  const std::string& word(std::string_view generator) const;
};

/// p = 2, rank 3, Y = {110, 101, 011}: the cube with w sectioned at the red
/// tetrahedron.
Preset tetrahedron();
/// p = 3, rank 2, Y = {11, 12}: DDmin at every level.
Preset c3_square_ddmin();
/// A rank-1 C_3 level with Y = {1, 2} in front of the c3-square cycle.
Preset c3_mixed_start();

/// "tetrahedron", "c3-square", "c3-mixed".
Preset preset_by_name(std::string_view name);
std::vector<std::string> preset_names();

/// Tetrahedron cube vertices: even weight is red {0, 3, 5, 6}, odd is black.
bool is_red(PointCode vertex);
std::vector<PointCode> red_vertices();
std::vector<PointCode> black_vertices();

/// w_k = h_k^-1 w h_k at level 1.
ReducedWord w_k(const DiceGroup& group, PointCode k);

}  // namespace dice
