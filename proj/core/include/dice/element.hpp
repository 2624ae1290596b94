#pragma once

// Group elements of a dice group in reduced form h * v_{g1}^{n1} ... v_{gm}^{nm},
// where v_g = g^-1 w g is a conjugate of the directed generator of the level.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dice/dice_config.hpp"
#include "dice/fp_algebra.hpp"

namespace dice {

struct Syllable {
  PointCode gamma = 0;
  std::uint64_t exp = 0;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

struct GeneratorLetter {
  enum class Kind { Rooted, Directed };

  Kind kind = Kind::Directed;
  std::uint32_t index = 0;  // basis index j >= 1 for Rooted
  std::int64_t exponent = 1;

  static GeneratorLetter rooted(std::uint32_t j, std::int64_t e = 1) { return {Kind::Rooted, j, e}; }
  static GeneratorLetter directed(std::int64_t e = 1) { return {Kind::Directed, 0, e}; }

  friend bool operator==(const GeneratorLetter&, const GeneratorLetter&) = default;
};

/// Whitespace separated tokens `w`, `aJ`, each with an optional `^K`.
/// The lone token `1` denotes the identity.
std::vector<GeneratorLetter> parse_word(std::string_view text);
std::string format_word(std::span<const GeneratorLetter> letters);

/// An element of G_level in reduced form. Adjacent syllables have distinct
/// gamma and every exponent lies in [1, q) for q the order of w_level.
class ReducedWord {
 public:
  int level() const noexcept { return level_; }
  PointCode head() const noexcept { return head_; }
  const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
  std::size_t w_length() const noexcept { return syllables_.size(); }
  bool is_identity() const noexcept { return head_ == 0 && syllables_.empty(); }

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

 private:
  friend class DiceGroup;
  friend class WordBuilder;

  ReducedWord(int level, PointCode head, std::vector<Syllable> syllables)
      : level_(level), head_(head), syllables_(std::move(syllables)) {}

  int level_;
  PointCode head_;
  std::vector<Syllable> syllables_;
};

inline std::size_t w_length(const ReducedWord& x) noexcept { return x.w_length(); }

/// Top action plus the nontrivial sections, ascending by vertex letter.
struct WreathDecomposition {
  PointCode top = 0;
  std::vector<std::pair<PointCode, ReducedWord>> sections;

  /// nullptr when the section at beta is trivial.
  const ReducedWord* section_at(PointCode beta) const;
};

/// Labels of the finite subtree T_[depth]: labels[j][v] is the translation the
/// element induces below vertex v of depth j (big-endian vertex index).
struct Portrait {
  int level = 1;
  int depth = 0;
  std::vector<CubeShape> shapes;  // shapes[j] is the cube of depth-j labels
  std::vector<std::vector<PointCode>> labels;

  PointCode label(std::span<const PointCode> vertex) const;
  bool all_zero() const;
  /// DOT digraph: node id is the dotted vertex path, node label the point literal.
  std::string to_dot() const;
  std::string to_text() const;
};

/// A dice configuration together with the per-level tables needed for
/// element arithmetic.
class DiceGroup {
 public:
  explicit DiceGroup(DiceConfig config);

  const DiceConfig& config() const noexcept { return config_; }
  const CubeShape& shape(int level) const { return tables(level).shape; }
  /// Exact order of w_level.
  std::uint64_t spine_order(int level) const { return tables(level).spine_order; }
  std::uint32_t prime(int level) const { return shape(level).p(); }
  int level_class(int level) const { return config_.level_class(level); }

  ReducedWord identity(int level) const;
  ReducedWord rooted(int level, PointCode h) const;
  /// w_level^exp.
  ReducedWord spine(int level, std::uint64_t exp = 1) const;
  /// v_gamma^exp = (gamma^-1 w gamma)^exp.
  ReducedWord spine_conjugate(int level, PointCode gamma, std::uint64_t exp = 1) const;
  /// Reduces an arbitrary head/syllable list.
  ReducedWord reduce(int level, PointCode head, std::span<const Syllable> syllables) const;

  /// Letters compose left to right as functions: "x y" acts as x after y.
  ReducedWord from_word(int level, std::span<const GeneratorLetter> letters) const;
  ReducedWord parse(int level, std::string_view text) const {
    const auto letters = parse_word(text);
    return from_word(level, letters);
  }

  ReducedWord multiply(const ReducedWord& x, const ReducedWord& y) const;
  ReducedWord inverse(const ReducedWord& x) const;
  ReducedWord power(const ReducedWord& x, std::uint64_t k) const;
  /// by^-1 * x * by.
  ReducedWord conjugate(const ReducedWord& x, const ReducedWord& by) const;
  /// x^-1 y^-1 x y.
  ReducedWord commutator(const ReducedWord& x, const ReducedWord& y) const;

  WreathDecomposition decompose(const ReducedWord& x) const;
  ReducedWord section(const ReducedWord& x, PointCode beta) const;

  /// Image of a vertex given as its letters, one per level starting at x.level().
  std::vector<PointCode> act(const ReducedWord& x, std::span<const PointCode> vertex) const;
  Portrait portrait(const ReducedWord& x, int depth) const;

  /// A generator word that parses back to x.
  std::string format(const ReducedWord& x) const;
  /// The reduced form, e.g. "h=100 v[100]^1 v[000]^1".
  std::string format_reduced(const ReducedWord& x) const;

  void require_same_level(const ReducedWord& x, const ReducedWord& y) const;

 private:
  struct LevelTables {
    CubeShape shape;
    std::uint64_t spine_order;
    /// For each letter: 0 trivial section of w, -1 the next spine, j >= 1 the
    /// rooted generator a_{next,j}.
    std::vector<std::int32_t> section_kind;
  };

  const LevelTables& tables(int level) const {
    return tables_[static_cast<std::size_t>(config_.level_class(level) - 1)];
  }

  DiceConfig config_;
  std::vector<LevelTables> tables_;
};

/// Memo key: the level class together with the reduced form.
struct StateKey {
  int level_class = 0;
  PointCode head = 0;
  std::vector<Syllable> syllables;

  static StateKey of(const DiceGroup& group, const ReducedWord& x) {
    return {group.level_class(x.level()), x.head(), x.syllables()};
  }
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept;
};

/// Caches for the triviality check and for decompositions. One context per
/// thread; results do not depend on what the cache already holds.
class EvalContext {
 public:
  explicit EvalContext(std::size_t max_states = std::size_t{1} << 22,
                       std::size_t max_cached_decompositions = std::size_t{1} << 16);

  const WreathDecomposition& decompose(const DiceGroup& group, const ReducedWord& x);

  std::size_t max_states() const noexcept { return max_states_; }
  std::size_t known_trivial() const noexcept { return trivial_.size(); }

 private:
  friend bool is_trivial(const DiceGroup&, const ReducedWord&, EvalContext&);

  std::size_t max_states_;
  std::size_t max_cached_;
  std::unordered_set<StateKey, StateKeyHash> trivial_;
  std::unordered_set<StateKey, StateKeyHash> nontrivial_;
  std::unordered_map<StateKey, std::shared_ptr<const WreathDecomposition>, StateKeyHash> decompositions_;
};

/// True iff x fixes every vertex of the tree. Explores the sections reachable
/// from x; the explored set being closed with zero heads proves triviality.
bool is_trivial(const DiceGroup& group, const ReducedWord& x, EvalContext& ctx);
bool is_trivial(const DiceGroup& group, const ReducedWord& x);

bool equals(const DiceGroup& group, const ReducedWord& x, const ReducedWord& y, EvalContext& ctx);
bool equals(const DiceGroup& group, const ReducedWord& x, const ReducedWord& y);

/// A random reduced word: w-length uniform in [0, max_wlen], head uniform,
/// each gamma uniform among points differing from the previous one, each
/// exponent uniform in [1, q).
ReducedWord sample_element(const DiceGroup& group, int level, std::size_t max_wlen, std::mt19937_64& rng);

/// Dotted decimal vertex path, e.g. "3.0"; empty string for the root.
std::vector<PointCode> parse_vertex(std::string_view text);
std::string format_vertex(std::span<const PointCode> vertex);

}  // namespace dice
