#include "dice/level_quotient.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "dice/errors.hpp"

namespace dice {

namespace {

std::uint64_t product(std::span<const std::uint32_t> radices) {
  std::uint64_t m = 1;
  for (auto r : radices) {
    m *= r;
    if (m > (std::uint64_t{1} << 31)) throw CapacityError("level quotient has more than 2^31 vertices");
  }
  return m;
}

}  // namespace

std::vector<std::uint32_t> level_radices(const DiceGroup& group, int level, int n) {
  if (n < 0) throw ShapeError("negative depth");
  std::vector<std::uint32_t> out;
  for (int k = 0; k < n; ++k) out.push_back(static_cast<std::uint32_t>(group.shape(level + k).size()));
  return out;
}

std::uint64_t vertex_index(std::span<const std::uint32_t> radices, std::span<const PointCode> path) {
  if (path.size() != radices.size()) throw PathShapeError("vertex path has the wrong depth", path.size());
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < path.size(); ++j) {
    if (path[j] >= radices[j]) throw PathShapeError("vertex letter outside its cube", j + 1);
    index = index * radices[j] + path[j];
  }
  return index;
}

std::uint64_t vertex_index(const DiceGroup& group, int level, std::span<const PointCode> path) {
  const auto radices = level_radices(group, level, static_cast<int>(path.size()));
  return vertex_index(radices, path);
}

std::vector<PointCode> vertex_path(std::span<const std::uint32_t> radices, std::uint64_t index) {
  if (index >= product(radices)) throw ShapeError("vertex index out of range");
  std::vector<PointCode> path(radices.size());
  for (std::size_t j = radices.size(); j-- > 0;) {
    path[j] = static_cast<PointCode>(index % radices[j]);
    index /= radices[j];
  }
  return path;
}

// ---------------------------------------------------------------------------
// LevelPermutation

LevelPermutation::LevelPermutation(std::vector<std::uint32_t> radices, std::vector<std::uint32_t> images)
    : radices_(std::move(radices)), images_(std::move(images)) {
  const std::uint64_t m = product(radices_);
  if (images_.size() != m) throw ShapeError("permutation size does not match the level");
  std::vector<char> hit(m, 0);
  for (auto v : images_) {
    if (v >= m || hit[v]) throw ShapeError("leaf images are not a bijection");
    hit[v] = 1;
  }
  // Tree compatibility: leaves sharing a depth-j ancestor share its image.
  std::uint64_t below = m;
  for (std::size_t j = 0; j + 1 < radices_.size(); ++j) {
    below /= radices_[j];
    for (std::uint64_t leaf = 0; leaf < m; ++leaf) {
      const std::uint64_t first = leaf - leaf % below;
      if (images_[leaf] / below != images_[first] / below) {
        throw ShapeError("permutation does not respect the tree");
      }
    }
  }
}

LevelPermutation LevelPermutation::identity(std::vector<std::uint32_t> radices) {
  std::vector<std::uint32_t> images(product(radices));
  std::iota(images.begin(), images.end(), 0u);
  return {std::move(radices), std::move(images)};
}

bool LevelPermutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

LevelPermutation LevelPermutation::inverse() const {
  std::vector<std::uint32_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint32_t>(i);
  return {radices_, std::move(inv)};
}

LevelPermutation LevelPermutation::truncate(int j) const {
  if (j < 0 || j > level()) throw ShapeError("truncation depth out of range");
  std::vector<std::uint32_t> head(radices_.begin(), radices_.begin() + j);
  const std::uint64_t count = product(head);
  const std::uint64_t below = images_.size() / count;
  std::vector<std::uint32_t> images(count);
  for (std::uint64_t v = 0; v < count; ++v) images[v] = static_cast<std::uint32_t>(images_[v * below] / below);
  return {std::move(head), std::move(images)};
}

BigInt LevelPermutation::order() const {
  BigInt result = 1;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t k = i; !seen[k]; k = images_[k]) {
      seen[k] = 1;
      ++len;
    }
    result = boost::multiprecision::lcm(result, BigInt(len));
  }
  return result;
}

std::string LevelPermutation::to_cycles() const {
  std::string out;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    for (std::size_t k = i; !seen[k]; k = images_[k]) {
      seen[k] = 1;
      if (k != i) out += ' ';
      out += std::to_string(k);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::string LevelPermutation::to_one_line() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(images_[i]);
  }
  return out;
}

LevelPermutation compose(const LevelPermutation& f, const LevelPermutation& g) {
  if (f.radices() != g.radices()) throw LevelMismatch("composing permutations of different trees");
  std::vector<std::uint32_t> images(g.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = f(g(static_cast<std::uint32_t>(i)));
  return {f.radices(), std::move(images)};
}

std::size_t LevelPermutationHash::operator()(const LevelPermutation& p) const noexcept {
  return boost::hash_range(p.images().begin(), p.images().end());
}

// ---------------------------------------------------------------------------
// Projection

namespace {

struct ProjectKey {
  StateKey state;
  int depth;
  friend bool operator==(const ProjectKey&, const ProjectKey&) = default;
};

struct ProjectKeyHash {
  std::size_t operator()(const ProjectKey& k) const noexcept {
    std::size_t seed = StateKeyHash{}(k.state);
    boost::hash_combine(seed, k.depth);
    return seed;
  }
};

class Projector {
 public:
  explicit Projector(const DiceGroup& group) : group_(group) {}

  // Leaf images of x on the n levels below it.
  const std::vector<std::uint32_t>& images(const ReducedWord& x, int n) {
    ProjectKey key{StateKey::of(group_, x), n};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const CubeShape& shape = group_.shape(x.level());
    const auto m = static_cast<std::uint32_t>(shape.size());
    const auto sub = static_cast<std::uint32_t>(product(level_radices(group_, x.level() + 1, n - 1)));
    std::vector<std::uint32_t> out(static_cast<std::size_t>(m) * sub);
    const WreathDecomposition dec = n > 1 ? group_.decompose(x) : WreathDecomposition{x.head(), {}};
    for (PointCode d = 0; d < m; ++d) {
      const std::uint32_t base = shape.add(d, x.head()) * sub;
      const ReducedWord* s = n > 1 ? dec.section_at(d) : nullptr;
      if (s == nullptr) {
        for (std::uint32_t k = 0; k < sub; ++k) out[d * sub + k] = base + k;
      } else {
        const auto& below = images(*s, n - 1);
        for (std::uint32_t k = 0; k < sub; ++k) out[d * sub + k] = base + below[k];
      }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  const DiceGroup& group_;
  std::unordered_map<ProjectKey, std::vector<std::uint32_t>, ProjectKeyHash> memo_;
};

}  // namespace

LevelPermutation project(const DiceGroup& group, const ReducedWord& x, int n) {
  if (n < 1) throw ShapeError("projection depth must be at least 1");
  auto radices = level_radices(group, x.level(), n);
  Projector projector(group);
  return {std::move(radices), projector.images(x, n)};
}

// ---------------------------------------------------------------------------
// Orders through the level-stabilizer series.
//
// When every local action is a translation, an element is a label per
// non-leaf vertex. On St(j) the labels at depth j add under composition, so
// St(j)/St(j+1) embeds in a vector space over F_p. The closure below keeps,
// per depth, an echelon basis of such vectors realised by group elements;
// the group order is the product of p^(basis size).

namespace {

struct Tree {
  std::vector<CubeShape> shapes;  // label cube at each depth
  std::vector<std::uint32_t> radices;
  std::vector<std::size_t> count;  // vertices at each depth
  std::vector<std::size_t> offset;  // into the flat label array
  std::size_t total = 0;

  int depth() const { return static_cast<int>(radices.size()); }
};

CubeShape shape_of_radix(std::uint32_t m) {
  std::uint32_t p = 2;
  while (m % p != 0) ++p;
  std::uint32_t rank = 0;
  for (std::uint32_t r = m; r > 1; r /= p) {
    if (r % p != 0) throw ShapeError("radix is not a prime power");
    ++rank;
  }
  return {p, rank};
}

Tree make_tree(const std::vector<std::uint32_t>& radices) {
  Tree t;
  t.radices = radices;
  std::size_t c = 1;
  for (auto m : radices) {
    t.shapes.push_back(shape_of_radix(m));
    t.count.push_back(c);
    t.offset.push_back(t.total);
    t.total += c;
    c *= m;
  }
  return t;
}

using Labels = std::vector<PointCode>;

/// Labels of a leaf permutation, or nullopt if some local action is not a
/// translation.
std::optional<Labels> labels_of(const Tree& t, const LevelPermutation& perm) {
  Labels out(t.total);
  const std::size_t leaves = perm.degree();
  std::size_t below = leaves;
  for (int j = 0; j < t.depth(); ++j) {
    const CubeShape& sh = t.shapes[j];
    const std::uint32_t m = t.radices[j];
    below /= m;  // leaves under a depth-(j+1) vertex
    for (std::size_t u = 0; u < t.count[j]; ++u) {
      const std::size_t first_child = u * m;
      const PointCode shift = (perm(static_cast<std::uint32_t>(first_child * below)) / below) % m;
      for (std::uint32_t d = 1; d < m; ++d) {
        const PointCode img = (perm(static_cast<std::uint32_t>((first_child + d) * below)) / below) % m;
        if (sh.subtract(img, d) != shift) return std::nullopt;
      }
      out[t.offset[j] + u] = shift;
    }
  }
  return out;
}

class SeriesClosure {
 public:
  explicit SeriesClosure(Tree tree) : t_(std::move(tree)), basis_(t_.radices.size()) {}

  Labels compose(const Labels& f, const Labels& g) const {
    Labels out(t_.total);
    std::vector<std::uint32_t> img{0}, next;
    for (int j = 0; j < t_.depth(); ++j) {
      const CubeShape& sh = t_.shapes[j];
      const std::uint32_t m = t_.radices[j];
      const std::size_t off = t_.offset[j];
      const bool last = j + 1 == t_.depth();
      if (!last) next.assign(t_.count[j] * m, 0);
      for (std::size_t u = 0; u < t_.count[j]; ++u) {
        const std::uint32_t gu = img[u];
        const PointCode lg = g[off + u];
        out[off + u] = sh.add(lg, f[off + gu]);
        if (!last) {
          for (std::uint32_t d = 0; d < m; ++d) next[u * m + d] = gu * m + sh.add(d, lg);
        }
      }
      img.swap(next);
    }
    return out;
  }

  Labels inverse(const Labels& f) const {
    Labels out(t_.total);
    std::vector<std::uint32_t> img{0}, next;
    for (int j = 0; j < t_.depth(); ++j) {
      const CubeShape& sh = t_.shapes[j];
      const std::uint32_t m = t_.radices[j];
      const std::size_t off = t_.offset[j];
      const bool last = j + 1 == t_.depth();
      if (!last) next.assign(t_.count[j] * m, 0);
      for (std::size_t u = 0; u < t_.count[j]; ++u) {
        const std::uint32_t fu = img[u];
        const PointCode lf = f[off + u];
        out[off + fu] = sh.negate(lf);
        if (!last) {
          for (std::uint32_t d = 0; d < m; ++d) next[u * m + d] = fu * m + sh.add(d, lf);
        }
      }
      img.swap(next);
    }
    return out;
  }

  Labels power(Labels base, std::uint64_t k) const {
    Labels acc(t_.total, 0);
    while (k > 0) {
      if (k & 1) acc = compose(acc, base);
      k >>= 1;
      if (k) base = compose(base, base);
    }
    return acc;
  }

  /// Depth of the first nonzero label, depth() for the identity.
  int first_depth(const Labels& e) const {
    for (int j = 0; j < t_.depth(); ++j) {
      const auto begin = e.begin() + static_cast<std::ptrdiff_t>(t_.offset[j]);
      if (std::any_of(begin, begin + static_cast<std::ptrdiff_t>(t_.count[j]), [](PointCode c) { return c != 0; })) {
        return j;
      }
    }
    return t_.depth();
  }

  void add_generator(const LevelPermutation& g) {
    gens_.push_back(*labels_of(t_, g));
    gen_inverses_.push_back(inverse(gens_.back()));
    pending_.push_back(gens_.back());
  }

  void close() {
    while (!pending_.empty()) {
      Labels x = std::move(pending_.front());
      pending_.pop_front();
      sift_and_insert(std::move(x));
    }
  }

  BigInt order() const {
    BigInt result = 1;
    for (int j = 0; j < t_.depth(); ++j) {
      for (std::size_t k = 0; k < basis_[j].size(); ++k) result *= t_.shapes[j].p();
    }
    return result;
  }

 private:
  struct Basis {
    std::size_t pivot;  // flat coordinate u * rank + (c - 1)
    Labels element;
    std::vector<Labels> neg_powers;  // neg_powers[c] = element^-c
  };

  std::uint32_t coordinate(int j, const Labels& e, std::size_t flat) const {
    const CubeShape& sh = t_.shapes[j];
    const std::size_t u = flat / sh.rank();
    return sh.coord(e[t_.offset[j] + u], static_cast<std::uint32_t>(flat % sh.rank()) + 1);
  }

  void sift_and_insert(Labels e) {
    for (;;) {
      const int j = first_depth(e);
      if (j == t_.depth()) return;
      for (const auto& b : basis_[j]) {
        const std::uint32_t c = coordinate(j, e, b.pivot);
        if (c != 0) e = compose(e, b.neg_powers[c]);
      }
      if (first_depth(e) == j) {
        insert(j, std::move(e));
        return;
      }
    }
  }

  void insert(int j, Labels e) {
    const CubeShape& sh = t_.shapes[j];
    const std::uint32_t p = sh.p();
    std::size_t pivot = 0;
    while (coordinate(j, e, pivot) == 0) ++pivot;
    const std::uint32_t lead = coordinate(j, e, pivot);
    if (lead != 1) e = power(std::move(e), inverse_mod(lead, p));

    Basis b{pivot, e, {}};
    b.neg_powers.resize(p);
    b.neg_powers[0] = Labels(t_.total, 0);
    const Labels inv = inverse(e);
    for (std::uint32_t c = 1; c < p; ++c) b.neg_powers[c] = compose(b.neg_powers[c - 1], inv);

    const bool deepest = j + 1 == t_.depth();
    if (!deepest) {
      pending_.push_back(power(e, p));
      for (const auto& other : basis_[j]) {
        // e^-1 other^-1 e other
        pending_.push_back(compose(compose(inv, other.neg_powers[1]), compose(e, other.element)));
      }
    }
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      pending_.push_back(compose(compose(gen_inverses_[k], e), gens_[k]));
    }
    basis_[j].push_back(std::move(b));
  }

  Tree t_;
  std::vector<std::vector<Basis>> basis_;
  std::vector<Labels> gens_;
  std::vector<Labels> gen_inverses_;
  std::deque<Labels> pending_;
};

void require_same_tree(std::span<const LevelPermutation> gens) {
  for (const auto& g : gens) {
    if (g.radices() != gens.front().radices()) throw LevelMismatch("generators act on different trees");
  }
}

}  // namespace

BigInt group_order(std::span<const LevelPermutation> gens) {
  if (gens.empty()) return 1;
  require_same_tree(gens);
  Tree tree = make_tree(gens.front().radices());
  for (const auto& g : gens) {
    if (!labels_of(tree, g)) return schreier_sims_order(gens);
  }
  SeriesClosure closure(std::move(tree));
  for (const auto& g : gens) closure.add_generator(g);
  closure.close();
  return closure.order();
}

BigInt schreier_sims_order(std::span<const LevelPermutation> gens) {
  if (gens.empty()) return 1;
  require_same_tree(gens);
  std::vector<PermGroupBSGS::Perm> perms;
  for (const auto& g : gens) perms.push_back(g.images());
  return PermGroupBSGS(gens.front().degree(), std::move(perms)).order();
}

std::optional<std::vector<LevelPermutation>> enumerate_group(std::span<const LevelPermutation> gens,
                                                             std::size_t cap) {
  if (cap < 1) throw ConfigError("enumeration cap must be at least 1");
  if (gens.empty()) throw ConfigError("enumeration needs at least one generator");
  require_same_tree(gens);
  std::vector<LevelPermutation> out{LevelPermutation::identity(gens.front().radices())};
  std::unordered_set<LevelPermutation, LevelPermutationHash> seen{out.front()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      LevelPermutation h = compose(g, out[i]);
      if (seen.insert(h).second) {
        if (out.size() >= cap) return std::nullopt;
        out.push_back(std::move(h));
      }
    }
  }
  return out;
}

StabilizedOrder stabilized_order(const DiceGroup& group, std::span<const ReducedWord> words, int n_max) {
  if (n_max < 2) throw ConfigError("stabilized_order needs n_max >= 2");
  StabilizedOrder result;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<LevelPermutation> perms;
    for (const auto& w : words) perms.push_back(project(group, w, n));
    result.orders.push_back(group_order(perms));
    result.order = result.orders.back();
    if (n >= 2 && result.orders[n - 1] == result.orders[n - 2]) {
      result.stabilized = true;
      result.depth = n - 1;
      return result;
    }
  }
  return result;
}

}  // namespace dice
