#pragma once

// Finite images pi_n(G): permutations of the level-n vertices, their group
// orders, and a brute-force enumeration used to cross-check them.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dice/element.hpp"

namespace dice {

using BigInt = boost::multiprecision::cpp_int;

/// Children per vertex at each depth below `level`, for n levels.
std::vector<std::uint32_t> level_radices(const DiceGroup& group, int level, int n);

/// Big-endian mixed radix: the first letter is the most significant digit.
std::uint64_t vertex_index(std::span<const std::uint32_t> radices, std::span<const PointCode> path);
std::uint64_t vertex_index(const DiceGroup& group, int level, std::span<const PointCode> path);
std::vector<PointCode> vertex_path(std::span<const std::uint32_t> radices, std::uint64_t index);

/// A tree-respecting permutation of the M_n leaves of T_[n].
class LevelPermutation {
 public:
  LevelPermutation(std::vector<std::uint32_t> radices, std::vector<std::uint32_t> images);
  static LevelPermutation identity(std::vector<std::uint32_t> radices);

  int level() const noexcept { return static_cast<int>(radices_.size()); }
  std::size_t degree() const noexcept { return images_.size(); }
  const std::vector<std::uint32_t>& radices() const noexcept { return radices_; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }
  std::uint32_t operator()(std::uint32_t i) const { return images_[i]; }

  bool is_identity() const noexcept;
  LevelPermutation inverse() const;
  /// Induced permutation of the level-j vertices.
  LevelPermutation truncate(int j) const;
  BigInt order() const;

  /// Cycle notation with 0-based points, "()" for the identity.
  std::string to_cycles() const;
  /// Space separated image array.
  std::string to_one_line() const;

  friend bool operator==(const LevelPermutation&, const LevelPermutation&) = default;

 private:
  std::vector<std::uint32_t> radices_;
  std::vector<std::uint32_t> images_;
};

/// (f o g)[i] = f[g[i]]: g acts first.
LevelPermutation compose(const LevelPermutation& f, const LevelPermutation& g);

struct LevelPermutationHash {
  std::size_t operator()(const LevelPermutation& p) const noexcept;
};

/// pi_n(x) on the n levels below x.level(). project(xy) = compose(project(x), project(y)).
LevelPermutation project(const DiceGroup& group, const ReducedWord& x, int n);

/// Order of the group generated by gens, all on the same tree. Uses the
/// level-stabilizer series when every generator acts on each vertex's
/// children by a translation, Schreier-Sims otherwise.
BigInt group_order(std::span<const LevelPermutation> gens);

/// Order through the generic Schreier-Sims path only.
BigInt schreier_sims_order(std::span<const LevelPermutation> gens);

/// Every element of <gens>, identity first, in BFS order; nullopt once more
/// than cap elements turn up.
std::optional<std::vector<LevelPermutation>> enumerate_group(std::span<const LevelPermutation> gens,
                                                             std::size_t cap);

struct StabilizedOrder {
  bool stabilized = false;
  BigInt order;  // the repeated value, or the last computed one
  int depth = 0;  // first n with order(n) == order(n + 1)
  std::vector<BigInt> orders;  // orders[n - 1] for n = 1..
};

/// Quotient orders of <words> for n = 1..n_max, stopping at the first repeat.
StabilizedOrder stabilized_order(const DiceGroup& group, std::span<const ReducedWord> words, int n_max);

/// Base and strong generating set with explicit transversals. Deterministic:
/// base points are taken in order of first moved point.
class PermGroupBSGS {
 public:
  using Perm = std::vector<std::uint32_t>;

  PermGroupBSGS(std::size_t degree, std::vector<Perm> generators);

  std::size_t degree() const noexcept { return degree_; }
  std::vector<std::uint32_t> base() const;
  std::vector<Perm> strong_generators() const;
  BigInt order() const;
  bool contains(const Perm& g) const;

 private:
  struct Level {
    std::uint32_t point = 0;
    std::vector<Perm> gens;
    std::vector<std::uint32_t> orbit;
    std::vector<std::int32_t> slot;  // index into transversal, -1 outside the orbit
    std::vector<Perm> transversal;  // transversal[k] maps point to orbit[k]
  };

  void rebuild_orbit(Level& level) const;
  /// Residue after sifting from level `from`, and the level where it stopped.
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const;

  std::size_t degree_;
  std::vector<Level> levels_;
};

}  // namespace dice
