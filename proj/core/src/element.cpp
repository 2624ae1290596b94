#include "dice/element.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <tuple>

#include "dice/order_engine.hpp"

namespace dice {

/// Accumulates a product left to right. Stored gammas are relative to
/// `offset_`, the total rooted translation appended so far, so appending a
/// rooted letter is O(1): the word is head * prod v_{stored + offset}^exp.
class WordBuilder {
 public:
  WordBuilder(int level, const CubeShape& shape, std::uint64_t q)
      : level_(level), shape_(shape), q_(q) {}

  WordBuilder(const ReducedWord& start, const CubeShape& shape, std::uint64_t q)
      : level_(start.level()), shape_(shape), q_(q), head_(start.head()), stored_(start.syllables()) {}

  void rooted(PointCode h) {
    head_ = shape_.add(head_, h);
    offset_ = shape_.add(offset_, h);
  }

  void syllable(PointCode gamma, std::uint64_t exp) {
    exp %= q_;
    if (exp == 0) return;
    const PointCode stored = shape_.subtract(gamma, offset_);
    if (!stored_.empty() && stored_.back().gamma == stored) {
      const std::uint64_t e = (stored_.back().exp + exp) % q_;
      if (e == 0) {
        stored_.pop_back();
      } else {
        stored_.back().exp = e;
      }
    } else {
      stored_.push_back({stored, exp});
    }
  }

  void spine(std::uint64_t exp) { syllable(0, exp); }

  ReducedWord finish() && {
    if (offset_ != 0) {
      for (auto& s : stored_) s.gamma = shape_.add(s.gamma, offset_);
    }
    return ReducedWord(level_, head_, std::move(stored_));
  }

 private:
  int level_;
  const CubeShape& shape_;
  std::uint64_t q_;
  PointCode head_ = 0;
  PointCode offset_ = 0;
  std::vector<Syllable> stored_;
};

namespace {

std::uint64_t mod_exponent(std::int64_t e, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  std::int64_t r = e % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

void hash_mix(std::size_t& seed, std::uint64_t v) {
  seed ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

}  // namespace

std::vector<GeneratorLetter> parse_word(std::string_view text) {
  std::vector<GeneratorLetter> out;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) {
    if (tok == "1") continue;
    std::string base = tok;
    std::int64_t exponent = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      base = tok.substr(0, caret);
      const std::string e = tok.substr(caret + 1);
      std::size_t used = 0;
      try {
        exponent = std::stoll(e, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (e.empty() || used != e.size() || e.front() == '+') {
        throw ParseError("bad exponent in token '" + tok + "'");
      }
    }
    if (base == "w") {
      out.push_back(GeneratorLetter::directed(exponent));
    } else if (base.size() >= 2 && base[0] == 'a' &&
               std::all_of(base.begin() + 1, base.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
               base[1] != '0' && base.size() <= 4) {
      out.push_back(GeneratorLetter::rooted(static_cast<std::uint32_t>(std::stoul(base.substr(1))), exponent));
    } else {
      throw ParseError("unknown generator token '" + tok + "'");
    }
  }
  return out;
}

std::string format_word(std::span<const GeneratorLetter> letters) {
  std::string out;
  for (const auto& l : letters) {
    if (!out.empty()) out += ' ';
    out += l.kind == GeneratorLetter::Kind::Directed ? "w" : "a" + std::to_string(l.index);
    if (l.exponent != 1) out += "^" + std::to_string(l.exponent);
  }
  return out.empty() ? "1" : out;
}

const ReducedWord* WreathDecomposition::section_at(PointCode beta) const {
  auto it = std::lower_bound(sections.begin(), sections.end(), beta,
                             [](const auto& entry, PointCode b) { return entry.first < b; });
  return (it != sections.end() && it->first == beta) ? &it->second : nullptr;
}

DiceGroup::DiceGroup(DiceConfig config) : config_(std::move(config)) {
  const int classes = config_.class_count();
  tables_.reserve(static_cast<std::size_t>(classes));
  for (int c = 1; c <= classes; ++c) {
    const LevelSpec& spec = config_.level(c);
    LevelTables t{spec.shape, dice::spine_order(config_, c),
                  std::vector<std::int32_t>(spec.shape.size(), 0)};
    t.section_kind[0] = -1;
    for (std::size_t j = 0; j < spec.defining_points.size(); ++j) {
      t.section_kind[spec.defining_points[j]] = static_cast<std::int32_t>(j + 1);
    }
    tables_.push_back(std::move(t));
  }
}

ReducedWord DiceGroup::identity(int level) const {
  config_.level_class(level);
  return ReducedWord(level, 0, {});
}

ReducedWord DiceGroup::rooted(int level, PointCode h) const {
  if (!shape(level).contains(h)) throw ShapeError("rooted point outside the level's cube");
  return ReducedWord(level, h, {});
}

ReducedWord DiceGroup::spine(int level, std::uint64_t exp) const {
  return spine_conjugate(level, 0, exp);
}

ReducedWord DiceGroup::spine_conjugate(int level, PointCode gamma, std::uint64_t exp) const {
  const auto& t = tables(level);
  if (!t.shape.contains(gamma)) throw ShapeError("conjugating point outside the level's cube");
  WordBuilder b(level, t.shape, t.spine_order);
  b.syllable(gamma, exp);
  return std::move(b).finish();
}

ReducedWord DiceGroup::reduce(int level, PointCode head, std::span<const Syllable> syllables) const {
  const auto& t = tables(level);
  if (!t.shape.contains(head)) throw ShapeError("head outside the level's cube");
  WordBuilder b(level, t.shape, t.spine_order);
  b.rooted(head);
  // head * v... : push the syllables after the head without shifting them.
  for (const auto& s : syllables) {
    if (!t.shape.contains(s.gamma)) throw ShapeError("syllable point outside the level's cube");
    b.syllable(s.gamma, s.exp);
  }
  return std::move(b).finish();
}

ReducedWord DiceGroup::from_word(int level, std::span<const GeneratorLetter> letters) const {
  const auto& t = tables(level);
  WordBuilder b(level, t.shape, t.spine_order);
  for (const auto& l : letters) {
    if (l.kind == GeneratorLetter::Kind::Directed) {
      b.spine(mod_exponent(l.exponent, t.spine_order));
    } else {
      const auto c = static_cast<std::uint32_t>(mod_exponent(l.exponent, t.shape.p()));
      b.rooted(t.shape.scale(c, t.shape.basis(l.index)));
    }
  }
  return std::move(b).finish();
}

void DiceGroup::require_same_level(const ReducedWord& x, const ReducedWord& y) const {
  if (level_class(x.level()) != level_class(y.level())) {
    throw LevelMismatch("elements of levels " + std::to_string(x.level()) + " and " +
                        std::to_string(y.level()) + " cannot be combined");
  }
}

ReducedWord DiceGroup::multiply(const ReducedWord& x, const ReducedWord& y) const {
  require_same_level(x, y);
  const auto& t = tables(x.level());
  WordBuilder b(x, t.shape, t.spine_order);
  b.rooted(y.head());
  for (const auto& s : y.syllables()) b.syllable(s.gamma, s.exp);
  return std::move(b).finish();
}

ReducedWord DiceGroup::inverse(const ReducedWord& x) const {
  const auto& t = tables(x.level());
  WordBuilder b(x.level(), t.shape, t.spine_order);
  const auto& syl = x.syllables();
  for (auto it = syl.rbegin(); it != syl.rend(); ++it) b.syllable(it->gamma, t.spine_order - it->exp);
  b.rooted(t.shape.negate(x.head()));
  return std::move(b).finish();
}

ReducedWord DiceGroup::power(const ReducedWord& x, std::uint64_t k) const {
  ReducedWord result = identity(x.level());
  ReducedWord base = x;
  while (k > 0) {
    if (k & 1u) result = multiply(result, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

ReducedWord DiceGroup::conjugate(const ReducedWord& x, const ReducedWord& by) const {
  return multiply(multiply(inverse(by), x), by);
}

ReducedWord DiceGroup::commutator(const ReducedWord& x, const ReducedWord& y) const {
  return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
}

WreathDecomposition DiceGroup::decompose(const ReducedWord& x) const {
  const auto& t = tables(x.level());
  const int next_level = x.level() + 1;
  const auto& nt = tables(next_level);
  const auto& defining = config_.level(x.level()).defining_points;

  // (beta, syllable index, kind) for every nontrivial factor w|_{beta+gamma}.
  std::vector<std::tuple<PointCode, std::uint32_t, std::int32_t>> factors;
  factors.reserve(x.syllables().size() * (defining.size() + 1));
  for (std::uint32_t j = 0; j < x.syllables().size(); ++j) {
    const PointCode gamma = x.syllables()[j].gamma;
    factors.emplace_back(t.shape.negate(gamma), j, -1);
    for (std::size_t k = 0; k < defining.size(); ++k) {
      factors.emplace_back(t.shape.subtract(defining[k], gamma), j, static_cast<std::int32_t>(k + 1));
    }
  }
  std::sort(factors.begin(), factors.end());

  WreathDecomposition out{x.head(), {}};
  for (std::size_t i = 0; i < factors.size();) {
    const PointCode beta = std::get<0>(factors[i]);
    WordBuilder b(next_level, nt.shape, nt.spine_order);
    for (; i < factors.size() && std::get<0>(factors[i]) == beta; ++i) {
      const auto exp = x.syllables()[std::get<1>(factors[i])].exp;
      const auto kind = std::get<2>(factors[i]);
      if (kind < 0) {
        b.spine(exp);
      } else {
        const auto c = static_cast<std::uint32_t>(exp % nt.shape.p());
        b.rooted(nt.shape.scale(c, nt.shape.basis(static_cast<std::uint32_t>(kind))));
      }
    }
    ReducedWord s = std::move(b).finish();
    if (!s.is_identity()) out.sections.emplace_back(beta, std::move(s));
  }
  return out;
}

ReducedWord DiceGroup::section(const ReducedWord& x, PointCode beta) const {
  const auto& t = tables(x.level());
  if (!t.shape.contains(beta)) throw ShapeError("section vertex outside the level's cube");
  const int next_level = x.level() + 1;
  const auto& nt = tables(next_level);
  WordBuilder b(next_level, nt.shape, nt.spine_order);
  for (const auto& s : x.syllables()) {
    const auto kind = t.section_kind[t.shape.add(beta, s.gamma)];
    if (kind < 0) {
      b.spine(s.exp);
    } else if (kind > 0) {
      const auto c = static_cast<std::uint32_t>(s.exp % nt.shape.p());
      b.rooted(nt.shape.scale(c, nt.shape.basis(static_cast<std::uint32_t>(kind))));
    }
  }
  return std::move(b).finish();
}

std::vector<PointCode> DiceGroup::act(const ReducedWord& x, std::span<const PointCode> vertex) const {
  std::vector<PointCode> out;
  out.reserve(vertex.size());
  ReducedWord cur = x;
  for (std::size_t d = 0; d < vertex.size(); ++d) {
    const int level = x.level() + static_cast<int>(d);
    const auto& sh = shape(level);
    if (!sh.contains(vertex[d])) {
      throw PathShapeError("letter " + std::to_string(vertex[d]) + " outside an alphabet of size " +
                               std::to_string(sh.size()),
                           static_cast<int>(d) + 1);
    }
    if (cur.is_identity()) {
      out.push_back(vertex[d]);
      continue;
    }
    out.push_back(sh.add(cur.head(), vertex[d]));
    if (d + 1 < vertex.size()) cur = section(cur, vertex[d]);
  }
  return out;
}

Portrait DiceGroup::portrait(const ReducedWord& x, int depth) const {
  if (depth < 0) throw ConfigError("portrait depth must be nonnegative");
  Portrait p;
  p.level = x.level();
  p.depth = depth;
  std::uint64_t vertices = 1;
  for (int j = 0; j <= depth; ++j) {
    p.shapes.push_back(shape(x.level() + j));
    if (j < depth) {
      vertices *= p.shapes.back().size();
      if (vertices > (std::uint64_t{1} << 24)) throw CapacityError("portrait too large");
    }
  }

  std::vector<std::optional<ReducedWord>> frontier;
  frontier.emplace_back(x);
  p.labels.push_back({x.head()});
  for (int j = 0; j < depth; ++j) {
    const auto m = p.shapes[static_cast<std::size_t>(j)].size();
    std::vector<std::optional<ReducedWord>> next(frontier.size() * m);
    std::vector<PointCode> labels(frontier.size() * m, 0);
    for (std::size_t v = 0; v < frontier.size(); ++v) {
      if (!frontier[v]) continue;
      const auto d = decompose(*frontier[v]);
      for (auto& [beta, s] : d.sections) {
        labels[v * m + beta] = s.head();
        next[v * m + beta] = std::move(s);
      }
    }
    frontier = std::move(next);
    p.labels.push_back(std::move(labels));
  }
  return p;
}

std::string DiceGroup::format(const ReducedWord& x) const {
  const auto& sh = shape(x.level());
  std::vector<GeneratorLetter> letters;
  auto emit_rooted = [&](PointCode c) {
    for (std::uint32_t j = 1; j <= sh.rank(); ++j) {
      if (auto e = sh.coord(c, j); e != 0) letters.push_back(GeneratorLetter::rooted(j, e));
    }
  };
  // t_h v_{g1}^{n1} ... = t_{h-g1} w^{n1} t_{g1-g2} w^{n2} ... t_{gm}
  PointCode pending = x.head();
  for (const auto& s : x.syllables()) {
    emit_rooted(sh.subtract(pending, s.gamma));
    letters.push_back(GeneratorLetter::directed(static_cast<std::int64_t>(s.exp)));
    pending = s.gamma;
  }
  emit_rooted(pending);
  return format_word(letters);
}

std::string DiceGroup::format_reduced(const ReducedWord& x) const {
  const auto& sh = shape(x.level());
  std::string out = "h=" + sh.format(x.head());
  for (const auto& s : x.syllables()) {
    out += " v[" + sh.format(s.gamma) + "]^" + std::to_string(s.exp);
  }
  return out;
}

PointCode Portrait::label(std::span<const PointCode> vertex) const {
  if (vertex.size() > static_cast<std::size_t>(depth)) throw ShapeError("vertex deeper than the portrait");
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < vertex.size(); ++j) {
    if (!shapes[j].contains(vertex[j])) throw PathShapeError("letter outside alphabet", static_cast<int>(j) + 1);
    index = index * shapes[j].size() + vertex[j];
  }
  return labels[vertex.size()][index];
}

bool Portrait::all_zero() const {
  for (const auto& row : labels) {
    if (std::any_of(row.begin(), row.end(), [](PointCode c) { return c != 0; })) return false;
  }
  return true;
}

namespace {

std::string vertex_id(const std::vector<CubeShape>& shapes, std::size_t depth, std::uint64_t index) {
  std::vector<PointCode> letters(depth);
  for (std::size_t j = depth; j-- > 0;) {
    letters[j] = static_cast<PointCode>(index % shapes[j].size());
    index /= shapes[j].size();
  }
  return format_vertex(letters);
}

}  // namespace

std::string Portrait::to_dot() const {
  std::ostringstream out;
  out << "digraph portrait {\n";
  out << "  node [shape=box];\n";
  for (std::size_t j = 0; j < labels.size(); ++j) {
    for (std::uint64_t v = 0; v < labels[j].size(); ++v) {
      const std::string id = vertex_id(shapes, j, v);
      out << "  \"" << id << "\" [label=\"" << shapes[j].format(labels[j][v]) << "\"];\n";
      if (j > 0) {
        const auto parent = vertex_id(shapes, j - 1, v / shapes[j - 1].size());
        out << "  \"" << parent << "\" -> \"" << id << "\";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string Portrait::to_text() const {
  std::ostringstream out;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    for (std::uint64_t v = 0; v < labels[j].size(); ++v) {
      const std::string id = vertex_id(shapes, j, v);
      out << (id.empty() ? "." : id) << '\t' << shapes[j].format(labels[j][v]) << '\n';
    }
  }
  return out.str();
}

std::size_t StateKeyHash::operator()(const StateKey& k) const noexcept {
  std::size_t seed = static_cast<std::size_t>(k.level_class);
  hash_mix(seed, k.head);
  for (const auto& s : k.syllables) {
    hash_mix(seed, s.gamma);
    hash_mix(seed, s.exp);
  }
  return seed;
}

EvalContext::EvalContext(std::size_t max_states, std::size_t max_cached_decompositions)
    : max_states_(max_states), max_cached_(max_cached_decompositions) {
  if (max_states == 0) throw ConfigError("max_states must be positive");
}

const WreathDecomposition& EvalContext::decompose(const DiceGroup& group, const ReducedWord& x) {
  auto key = StateKey::of(group, x);
  if (auto it = decompositions_.find(key); it != decompositions_.end()) return *it->second;
  if (decompositions_.size() >= max_cached_) decompositions_.clear();
  auto d = std::make_shared<const WreathDecomposition>(group.decompose(x));
  return *decompositions_.emplace(std::move(key), std::move(d)).first->second;
}

bool is_trivial(const DiceGroup& group, const ReducedWord& x, EvalContext& ctx) {
  if (x.head() != 0) return false;
  if (x.syllables().empty()) return true;
  StateKey root = StateKey::of(group, x);
  if (ctx.trivial_.contains(root)) return true;
  if (ctx.nontrivial_.contains(root)) return false;

  std::unordered_set<StateKey, StateKeyHash> visited;
  std::deque<ReducedWord> queue;
  visited.insert(root);
  queue.push_back(x);
  while (!queue.empty()) {
    const ReducedWord y = std::move(queue.front());
    queue.pop_front();
    // Copy: the cache may be cleared by nested lookups.
    const WreathDecomposition d = group.decompose(y);
    for (const auto& [beta, s] : d.sections) {
      if (s.head() != 0) {
        ctx.nontrivial_.insert(std::move(root));
        return false;
      }
      if (s.syllables().empty()) continue;
      StateKey key = StateKey::of(group, s);
      if (ctx.trivial_.contains(key)) continue;
      if (ctx.nontrivial_.contains(key)) {
        ctx.nontrivial_.insert(std::move(root));
        return false;
      }
      if (visited.insert(std::move(key)).second) {
        if (visited.size() > ctx.max_states_) {
          throw CapacityError("triviality check exceeded " + std::to_string(ctx.max_states_) + " states");
        }
        queue.push_back(s);
      }
    }
  }
  for (auto& k : visited) ctx.trivial_.insert(k);
  return true;
}

bool is_trivial(const DiceGroup& group, const ReducedWord& x) {
  EvalContext ctx;
  return is_trivial(group, x, ctx);
}

bool equals(const DiceGroup& group, const ReducedWord& x, const ReducedWord& y, EvalContext& ctx) {
  group.require_same_level(x, y);
  if (x == y) return true;
  return is_trivial(group, group.multiply(x, group.inverse(y)), ctx);
}

bool equals(const DiceGroup& group, const ReducedWord& x, const ReducedWord& y) {
  EvalContext ctx;
  return equals(group, x, y, ctx);
}

std::vector<PointCode> parse_vertex(std::string_view text) {
  std::vector<PointCode> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = text.find('.', pos);
    const std::string_view part = text.substr(pos, dot == std::string_view::npos ? text.npos : dot - pos);
    if (part.empty() || part.size() > 9 ||
        !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("bad vertex path '" + std::string(text) + "'");
    }
    out.push_back(static_cast<PointCode>(std::stoul(std::string(part))));
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return out;
}

std::string format_vertex(std::span<const PointCode> vertex) {
  std::string out;
  for (std::size_t j = 0; j < vertex.size(); ++j) {
    if (j) out += '.';
    out += std::to_string(vertex[j]);
  }
  return out;
}

ReducedWord sample_element(const DiceGroup& group, int level, std::size_t max_wlen, std::mt19937_64& rng) {
  const CubeShape& shape = group.shape(level);
  const std::uint64_t q = group.spine_order(level);
  std::uniform_int_distribution<std::size_t> length(0, max_wlen);
  std::uniform_int_distribution<PointCode> point(0, static_cast<PointCode>(shape.size() - 1));
  std::uniform_int_distribution<PointCode> other(0, static_cast<PointCode>(shape.size() - 2));
  std::uniform_int_distribution<std::uint64_t> exponent(1, q - 1);

  const std::size_t n = length(rng);
  const PointCode head = point(rng);
  std::vector<Syllable> syllables;
  for (std::size_t k = 0; k < n; ++k) {
    PointCode gamma = 0;
    if (k == 0) {
      gamma = point(rng);
    } else {
      gamma = other(rng);
      if (gamma >= syllables.back().gamma) ++gamma;
    }
    syllables.push_back({gamma, exponent(rng)});
  }
  return group.reduce(level, head, syllables);
}

}  // namespace dice
