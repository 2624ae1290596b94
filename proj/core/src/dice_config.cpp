#include "dice/dice_config.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace dice {

void LevelSpec::validate() const {
  std::set<PointCode> seen;
  for (PointCode y : defining_points) {
    if (!shape.contains(y)) throw ShapeError("defining point outside its cube");
    if (y == 0) throw IdentityPointError("defining point " + shape.format(y) + " is the identity");
    if (!seen.insert(y).second) {
      throw DuplicatePointError("defining point " + shape.format(y) + " listed twice");
    }
  }
}

std::vector<CubePoint> LevelSpec::points() const {
  std::vector<CubePoint> out;
  out.reserve(defining_points.size());
  for (PointCode y : defining_points) out.emplace_back(shape, y);
  return out;
}

DiceConfig::DiceConfig(std::vector<LevelSpec> prefix, std::vector<LevelSpec> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw ConfigError("a dice config needs a nonempty cycle");
  const int total = class_count();
  for (int c = 1; c <= total; ++c) {
    const LevelSpec& spec = by_class(c);
    spec.shape.require_enumerable();
    spec.validate();
    const LevelSpec& next = by_class(next_class(c));
    if (spec.defining_points.size() != next.shape.rank()) {
      throw ChainError("level class " + std::to_string(c) + " has " +
                       std::to_string(spec.defining_points.size()) +
                       " defining points but the next level has rank " +
                       std::to_string(next.shape.rank()));
    }
  }
}

const LevelSpec& DiceConfig::level(int i) const { return by_class(level_class(i)); }

int DiceConfig::level_class(int i) const {
  if (i < 1) throw ConfigError("levels are numbered from 1");
  const int k = prefix_length();
  if (i <= k) return i;
  return k + (i - k - 1) % period() + 1;
}

int DiceConfig::next_class(int c) const noexcept {
  return c == class_count() ? prefix_length() + 1 : c + 1;
}

std::vector<std::uint32_t> DiceConfig::primes() const {
  std::set<std::uint32_t> ps;
  for (const auto& l : prefix_) ps.insert(l.shape.p());
  for (const auto& l : cycle_) ps.insert(l.shape.p());
  return {ps.begin(), ps.end()};
}

std::uint64_t DiceConfig::prime_product() const {
  std::uint64_t q = 1;
  for (auto p : primes()) q *= p;
  return q;
}

std::uint32_t DiceConfig::max_rank() const {
  std::uint32_t r = 0;
  for (const auto& l : prefix_) r = std::max(r, l.shape.rank());
  for (const auto& l : cycle_) r = std::max(r, l.shape.rank());
  return r;
}

std::string DiceConfig::serialize() const {
  std::ostringstream out;
  out << "dice v1\n";
  out << "prefix " << prefix_.size() << " cycle " << cycle_.size() << "\n";
  auto emit = [&](const LevelSpec& l) {
    out << "level p=" << l.shape.p() << " rank=" << l.shape.rank() << "\n";
    out << "points";
    for (PointCode y : l.defining_points) out << ' ' << l.shape.format(y);
    out << "\n";
  };
  for (const auto& l : prefix_) emit(l);
  for (const auto& l : cycle_) emit(l);
  return out.str();
}

bool operator==(const DiceConfig& a, const DiceConfig& b) {
  auto same = [](const std::vector<LevelSpec>& x, const std::vector<LevelSpec>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i].shape == y[i].shape) || x[i].defining_points != y[i].defining_points) {
        return false;
      }
    }
    return true;
  };
  return same(a.prefix_, b.prefix_) && same(a.cycle_, b.cycle_);
}

namespace {

struct SourceLine {
  int number;
  std::vector<std::string> tokens;
};

std::vector<SourceLine> tokenize(std::string_view text) {
  std::vector<SourceLine> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    SourceLine line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

std::uint64_t parse_count(const std::string& tok, int line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      tok.size() > 9) {
    throw ParseError("expected a nonnegative integer, got '" + tok + "'", line);
  }
  return std::stoull(tok);
}

std::uint64_t parse_keyed(const std::string& tok, const std::string& key, int line) {
  const std::string prefix = key + "=";
  if (tok.rfind(prefix, 0) != 0) throw ParseError("expected '" + prefix + "<n>', got '" + tok + "'", line);
  return parse_count(tok.substr(prefix.size()), line);
}

}  // namespace

DiceConfig parse_config(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t cursor = 0;
  auto next = [&](const char* what) -> const SourceLine& {
    if (cursor >= lines.size()) {
      const int last = lines.empty() ? 1 : lines.back().number;
      throw ParseError(std::string("unexpected end of input, expected ") + what, last);
    }
    return lines[cursor++];
  };

  const auto& header = next("'dice v1'");
  if (header.tokens != std::vector<std::string>{"dice", "v1"}) {
    throw ParseError("first line must be 'dice v1'", header.number);
  }
  const auto& counts = next("'prefix <k> cycle <M>'");
  if (counts.tokens.size() != 4 || counts.tokens[0] != "prefix" || counts.tokens[2] != "cycle") {
    throw ParseError("expected 'prefix <k> cycle <M>'", counts.number);
  }
  const auto k = parse_count(counts.tokens[1], counts.number);
  const auto m = parse_count(counts.tokens[3], counts.number);
  if (m < 1) throw ParseError("cycle length must be at least 1", counts.number);
  if (k + m > 4096) throw ParseError("too many levels", counts.number);

  std::vector<LevelSpec> levels;
  std::vector<int> point_lines;
  for (std::uint64_t b = 0; b < k + m; ++b) {
    const auto& head = next("a 'level' line");
    if (head.tokens.size() != 3 || head.tokens[0] != "level") {
      throw ParseError("expected 'level p=<prime> rank=<N>'", head.number);
    }
    const auto p = parse_keyed(head.tokens[1], "p", head.number);
    const auto rank = parse_keyed(head.tokens[2], "rank", head.number);
    if (!is_prime(p)) throw NonPrimeError("p=" + std::to_string(p) + " is not prime");
    if (p > 36) throw ParseError("primes above 36 have no point literal syntax", head.number);
    if (rank < 1) throw ParseError("rank must be at least 1", head.number);
    std::optional<CubeShape> shape;
    try {
      shape.emplace(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(rank));
      shape->require_enumerable();
    } catch (const CapacityError& e) {
      throw ParseError(e.what(), head.number);
    }

    const auto& pts = next("a 'points' line");
    if (pts.tokens.empty() || pts.tokens[0] != "points") {
      throw ParseError("expected 'points <P1> ... <Pr>'", pts.number);
    }
    LevelSpec spec{*shape, {}};
    std::set<PointCode> seen;
    for (std::size_t t = 1; t < pts.tokens.size(); ++t) {
      PointCode y;
      try {
        y = shape->parse(pts.tokens[t]);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), pts.number);
      }
      if (y == 0) {
        throw IdentityPointError("defining point " + pts.tokens[t] + " is the identity",
                                 pts.number);
      }
      if (!seen.insert(y).second) {
        throw DuplicatePointError("defining point " + pts.tokens[t] + " listed twice",
                                  pts.number);
      }
      spec.defining_points.push_back(y);
    }
    levels.push_back(std::move(spec));
    point_lines.push_back(pts.number);
  }
  if (cursor != lines.size()) throw ParseError("trailing content", lines[cursor].number);

  const std::size_t total = levels.size();
  for (std::size_t c = 0; c < total; ++c) {
    const std::size_t nxt = (c + 1 == total) ? k : c + 1;
    if (levels[c].defining_points.size() != levels[nxt].shape.rank()) {
      throw ChainError(std::to_string(levels[c].defining_points.size()) +
                           " defining points but the next level has rank " +
                           std::to_string(levels[nxt].shape.rank()),
                       point_lines[c]);
    }
  }

  std::vector<LevelSpec> prefix(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<LevelSpec> cycle(levels.begin() + static_cast<std::ptrdiff_t>(k), levels.end());
  return DiceConfig(std::move(prefix), std::move(cycle));
}

DiceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Condition parse_condition(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "d") return Condition::D;
  if (n == "dd") return Condition::DD;
  if (n == "ddmax") return Condition::DDMax;
  if (n == "ddmax-1" || n == "ddmax1") return Condition::DDMax1;
  if (n == "ddmin") return Condition::DDMin;
  throw ParseError("unknown condition '" + std::string(name) + "'");
}

std::string condition_name(Condition c) {
  switch (c) {
    case Condition::D: return "D";
    case Condition::DD: return "DD";
    case Condition::DDMax: return "DDmax";
    case Condition::DDMax1: return "DDmax-1";
    case Condition::DDMin: return "DDmin";
  }
  return "?";
}

std::string Witness::to_string() const {
  std::ostringstream out;
  out << "level " << level;
  if (line) out << " line " << line->to_string();
  if (point) out << " point " << point->to_string();
  if (!trail.empty()) {
    out << " trail";
    for (const auto& [lvl, face] : trail) out << ' ' << lvl << ':' << face.to_string();
  }
  if (!reason.empty()) out << " (" << reason << ")";
  return out.str();
}

std::string LuckyVerdict::to_string() const {
  switch (kind_) {
    case Kind::Lucky: return "Lucky";
    case Kind::NotLucky: return "NotLucky[" + (witness_ ? witness_->to_string() : "") + "]";
    case Kind::Undetermined:
      return "Undetermined[" + (witness_ ? witness_->to_string() : "") + "]";
  }
  return "?";
}

namespace {

/// Defining points of level i grouped by line: direction -> index mask.
std::map<PointCode, std::uint32_t> points_by_line(const LevelSpec& level) {
  std::map<PointCode, std::uint32_t> out;
  for (std::size_t j = 0; j < level.defining_points.size(); ++j) {
    out[canonical_direction(level.shape, level.defining_points[j])] |= 1u << j;
  }
  return out;
}

/// First point of Y_next whose support fits in the index mask, or nullopt.
std::optional<PointCode> point_in_face(const LevelSpec& next, std::uint32_t mask) {
  for (PointCode y : next.defining_points) {
    if ((next.shape.support_mask(y) & ~mask) == 0) return y;
  }
  return std::nullopt;
}

void require_step(int i) {
  if (i < 1) throw ConfigError("steps are numbered from 1");
}

}  // namespace

LuckyVerdict check_ddmin(const DiceConfig& config, int i) {
  require_step(i);
  const LevelSpec& here = config.level(i);
  const LevelSpec& next = config.level(i + 1);
  for (const auto& [dir, mask] : points_by_line(here)) {
    if (std::popcount(mask) > 1) {
      const int second = std::countr_zero(mask & (mask - 1));
      return LuckyVerdict::not_lucky(Witness{i, CubePoint(here.shape, dir),
                                             CubePoint(here.shape, here.defining_points[second]),
                                             {}, "line holds more than one defining point"});
    }
  }
  for (PointCode y : next.defining_points) {
    if (std::popcount(next.shape.support_mask(y)) < 2) {
      return LuckyVerdict::not_lucky(Witness{i + 1, std::nullopt, CubePoint(next.shape, y), {},
                                             "defining point lies on an axis"});
    }
  }
  return LuckyVerdict::lucky();
}

LuckyVerdict check_ddmax(const DiceConfig& config, int i) {
  require_step(i);
  const LevelSpec& here = config.level(i);
  const LevelSpec& next = config.level(i + 1);
  int d = 0;
  PointCode argmax = 0;
  for (const auto& [dir, mask] : points_by_line(here)) {
    if (std::popcount(mask) > d) {
      d = std::popcount(mask);
      argmax = dir;
    }
  }
  for (PointCode y : next.defining_points) {
    if (std::popcount(next.shape.support_mask(y)) <= d) {
      return LuckyVerdict::not_lucky(
          Witness{i + 1, argmax ? std::optional(CubePoint(here.shape, argmax)) : std::nullopt,
                  CubePoint(next.shape, y), {},
                  "support fits in a " + std::to_string(d) + "-dimensional face"});
    }
  }
  return LuckyVerdict::lucky();
}

LuckyVerdict check_ddmax1(const DiceConfig& config, int i) {
  require_step(i);
  const LevelSpec& here = config.level(i);
  const LevelSpec& next = config.level(i + 1);
  const auto bound = static_cast<int>(here.shape.p()) - 1;
  for (PointCode y : next.defining_points) {
    if (std::popcount(next.shape.support_mask(y)) <= bound) {
      return LuckyVerdict::not_lucky(Witness{i + 1, std::nullopt, CubePoint(next.shape, y), {},
                                             "support fits in a " + std::to_string(bound) +
                                                 "-dimensional face"});
    }
  }
  return LuckyVerdict::lucky();
}

LuckyVerdict check_dd(const DiceConfig& config, int i) {
  require_step(i);
  const LevelSpec& here = config.level(i);
  const LevelSpec& next = config.level(i + 1);
  for (const auto& [dir, mask] : points_by_line(here)) {
    if (auto y = point_in_face(next, mask)) {
      return LuckyVerdict::not_lucky(Witness{i, CubePoint(here.shape, dir), CubePoint(next.shape, *y),
                                             {{i, FaceIndexSet(mask)}},
                                             "face of the line's points holds a defining point"});
    }
  }
  return LuckyVerdict::lucky();
}

std::uint64_t default_horizon(const DiceConfig& config) {
  const std::uint32_t r = std::min<std::uint32_t>(config.max_rank(), 40);
  return static_cast<std::uint64_t>(config.prefix_length()) +
         2ull * static_cast<std::uint64_t>(config.period()) * (std::uint64_t{1} << r);
}

LuckyVerdict check_d(const DiceConfig& config, int i, std::uint64_t horizon) {
  require_step(i);
  const LevelSpec& start = config.level(i);
  for (const auto& [dir, initial] : points_by_line(start)) {
    std::set<std::pair<int, std::uint32_t>> seen;
    std::vector<std::pair<int, FaceIndexSet>> trail;
    int m = i;
    std::uint32_t mask = initial;
    std::uint64_t steps = 0;
    while (mask != 0) {
      trail.emplace_back(m, FaceIndexSet(mask));
      if (!seen.emplace(config.level_class(m), mask).second) {
        return LuckyVerdict::not_lucky(Witness{i, CubePoint(start.shape, dir), std::nullopt,
                                               std::move(trail), "process cycles"});
      }
      if (++steps > horizon) {
        return LuckyVerdict::undetermined(Witness{i, CubePoint(start.shape, dir), std::nullopt,
                                                  std::move(trail), "horizon reached"});
      }
      const LevelSpec& next = config.level(m + 1);
      std::uint32_t next_mask = 0;
      for (std::size_t k = 0; k < next.defining_points.size(); ++k) {
        if ((next.shape.support_mask(next.defining_points[k]) & ~mask) == 0) next_mask |= 1u << k;
      }
      mask = next_mask;
      ++m;
    }
  }
  return LuckyVerdict::lucky();
}

LuckyVerdict check(const DiceConfig& config, int i, Condition condition) {
  switch (condition) {
    case Condition::D: return check_d(config, i);
    case Condition::DD: return check_dd(config, i);
    case Condition::DDMax: return check_ddmax(config, i);
    case Condition::DDMax1: return check_ddmax1(config, i);
    case Condition::DDMin: return check_ddmin(config, i);
  }
  throw ConfigError("unknown condition");
}

std::vector<LuckyVerdict> lucky_steps(const DiceConfig& config, int i_max, Condition condition) {
  std::vector<LuckyVerdict> out;
  out.reserve(static_cast<std::size_t>(std::max(i_max, 0)));
  for (int i = 1; i <= i_max; ++i) out.push_back(check(config, i, condition));
  return out;
}

}  // namespace dice
