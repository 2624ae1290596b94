#pragma once

// Dice-rolling configurations (p_i, N_i, Y_i) and the lucky-roll checkers.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dice/fp_algebra.hpp"

namespace dice {

/// One level of the tree: the cube H_i and its ordered defining points Y_i.
/// The j-th point corresponds to the j-th basis vector of the next level.
struct LevelSpec {
  CubeShape shape;
  std::vector<PointCode> defining_points;

  /// Throws IdentityPointError / DuplicatePointError / ShapeError.
  void validate() const;
  std::vector<CubePoint> points() const;
};

/// An eventually periodic sequence of levels: a finite prefix followed by a
/// cycle that repeats forever.
class DiceConfig {
 public:
  DiceConfig(std::vector<LevelSpec> prefix, std::vector<LevelSpec> cycle);

  const std::vector<LevelSpec>& prefix() const noexcept { return prefix_; }
  const std::vector<LevelSpec>& cycle() const noexcept { return cycle_; }
  int prefix_length() const noexcept { return static_cast<int>(prefix_.size()); }
  int period() const noexcept { return static_cast<int>(cycle_.size()); }
  /// Number of distinct level classes, prefix_length() + period().
  int class_count() const noexcept { return prefix_length() + period(); }

  /// Level i >= 1 resolved through the periodicity.
  const LevelSpec& level(int i) const;
  /// Canonical representative in 1..class_count() of level i.
  int level_class(int i) const;
  /// The level class following class c.
  int next_class(int c) const noexcept;

  /// The finite prime set P, ascending.
  std::vector<std::uint32_t> primes() const;
  /// q, the product of the primes in P.
  std::uint64_t prime_product() const;
  std::uint32_t max_rank() const;

  /// Canonical text form; parse_config(serialize()) reproduces the config.
  std::string serialize() const;

  friend bool operator==(const DiceConfig& a, const DiceConfig& b);

 private:
  const LevelSpec& by_class(int c) const { return c <= prefix_length() ? prefix_[c - 1] : cycle_[c - prefix_length() - 1]; }

  std::vector<LevelSpec> prefix_;
  std::vector<LevelSpec> cycle_;
};

DiceConfig parse_config(std::string_view text);
DiceConfig load_config(const std::string& path);

enum class Condition { D, DD, DDMax, DDMax1, DDMin };

Condition parse_condition(std::string_view name);
std::string condition_name(Condition c);

/// Evidence for a failed lucky-roll check.
struct Witness {
  int level = 0;
  /// Direction of the offending line in H_level, when a line is involved.
  std::optional<CubePoint> line;
  /// The offending defining point (in Y_level or Y_level+1).
  std::optional<CubePoint> point;
  /// For condition D: the visited (level, J) states, the last one repeating.
  std::vector<std::pair<int, FaceIndexSet>> trail;
  std::string reason;

  std::string to_string() const;
};

class LuckyVerdict {
 public:
  enum class Kind { Lucky, NotLucky, Undetermined };

  static LuckyVerdict lucky() { return LuckyVerdict(Kind::Lucky, std::nullopt); }
  static LuckyVerdict not_lucky(Witness w) { return LuckyVerdict(Kind::NotLucky, std::move(w)); }
  static LuckyVerdict undetermined(Witness w) { return LuckyVerdict(Kind::Undetermined, std::move(w)); }

  Kind kind() const noexcept { return kind_; }
  bool is_lucky() const noexcept { return kind_ == Kind::Lucky; }
  const std::optional<Witness>& witness() const noexcept { return witness_; }
  std::string to_string() const;

 private:
  LuckyVerdict(Kind k, std::optional<Witness> w) : kind_(k), witness_(std::move(w)) {}

  Kind kind_;
  std::optional<Witness> witness_;
};

LuckyVerdict check_ddmin(const DiceConfig& config, int i);
LuckyVerdict check_ddmax(const DiceConfig& config, int i);
LuckyVerdict check_ddmax1(const DiceConfig& config, int i);
LuckyVerdict check_dd(const DiceConfig& config, int i);

/// |prefix| + 2 * M * 2^(max rank).
std::uint64_t default_horizon(const DiceConfig& config);

/// The iterated line/face process. A repeated (level class, J) state proves
/// the process never stops and yields NotLucky.
LuckyVerdict check_d(const DiceConfig& config, int i, std::uint64_t horizon);
inline LuckyVerdict check_d(const DiceConfig& config, int i) {
  return check_d(config, i, default_horizon(config));
}

LuckyVerdict check(const DiceConfig& config, int i, Condition condition);

/// Verdicts for steps 1..i_max.
std::vector<LuckyVerdict> lucky_steps(const DiceConfig& config, int i_max, Condition condition);

}  // namespace dice
