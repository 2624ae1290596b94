// Deterministic Schreier-Sims. Permutations are image arrays acting on the
// right: mul(a, b) applies a first.

#include <algorithm>
#include <numeric>
#include <optional>

#include "dice/errors.hpp"
#include "dice/level_quotient.hpp"

namespace dice {

namespace {

using Perm = PermGroupBSGS::Perm;

Perm mul(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

Perm inv(const Perm& a) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::uint32_t>(i);
  return out;
}

Perm identity_perm(std::size_t n) {
  Perm out(n);
  std::iota(out.begin(), out.end(), 0u);
  return out;
}

std::optional<std::uint32_t> first_moved(const Perm& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] != i) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

}  // namespace

PermGroupBSGS::PermGroupBSGS(std::size_t degree, std::vector<Perm> generators) : degree_(degree) {
  std::vector<Perm> gens;
  for (auto& g : generators) {
    if (g.size() != degree) throw ShapeError("generator degree mismatch");
    std::vector<char> hit(degree, 0);
    for (auto v : g) {
      if (v >= degree || hit[v]) throw ShapeError("generator is not a permutation");
      hit[v] = 1;
    }
    if (first_moved(g)) gens.push_back(std::move(g));
  }
  if (gens.empty()) return;

  // Initial base: every generator moves some base point.
  for (const auto& g : gens) {
    bool moves = false;
    for (const auto& l : levels_) moves = moves || g[l.point] != l.point;
    if (!moves) levels_.push_back(Level{*first_moved(g), {}, {}, {}, {}});
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    for (const auto& g : gens) {
      bool fixes = true;
      for (std::size_t l = 0; l < i; ++l) fixes = fixes && g[levels_[l].point] == levels_[l].point;
      if (fixes) levels_[i].gens.push_back(g);
    }
    rebuild_orbit(levels_[i]);
  }

  std::size_t i = levels_.size();
  while (i-- > 0) {
    bool closed = true;
    for (std::size_t k = 0; k < levels_[i].orbit.size() && closed; ++k) {
      for (std::size_t s = 0; s < levels_[i].gens.size(); ++s) {
        const Level& lv = levels_[i];
        const std::uint32_t beta = lv.orbit[k];
        const std::uint32_t image = lv.gens[s][beta];
        Perm schreier = mul(mul(lv.transversal[k], lv.gens[s]), inv(lv.transversal[lv.slot[image]]));
        auto [h, j] = strip(std::move(schreier), i + 1);
        if (j == levels_.size() && !first_moved(h)) continue;
        if (j == levels_.size()) levels_.push_back(Level{*first_moved(h), {}, {}, {}, {}});
        for (std::size_t l = i + 1; l <= j; ++l) {
          levels_[l].gens.push_back(h);
          rebuild_orbit(levels_[l]);
        }
        i = j + 1;  // the loop decrement lands on j
        closed = false;
        break;
      }
    }
  }
}

void PermGroupBSGS::rebuild_orbit(Level& level) const {
  level.orbit.assign(1, level.point);
  level.slot.assign(degree_, -1);
  level.slot[level.point] = 0;
  level.transversal.assign(1, identity_perm(degree_));
  for (std::size_t k = 0; k < level.orbit.size(); ++k) {
    for (const auto& s : level.gens) {
      const std::uint32_t next = s[level.orbit[k]];
      if (level.slot[next] != -1) continue;
      level.slot[next] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(next);
      level.transversal.push_back(mul(level.transversal[k], s));
    }
  }
}

std::pair<Perm, std::size_t> PermGroupBSGS::strip(Perm g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& lv = levels_[l];
    const std::uint32_t beta = g[lv.point];
    if (lv.slot[beta] == -1) return {std::move(g), l};
    g = mul(g, inv(lv.transversal[lv.slot[beta]]));
  }
  return {std::move(g), levels_.size()};
}

std::vector<std::uint32_t> PermGroupBSGS::base() const {
  std::vector<std::uint32_t> out;
  for (const auto& l : levels_) out.push_back(l.point);
  return out;
}

std::vector<Perm> PermGroupBSGS::strong_generators() const {
  std::vector<Perm> out;
  for (const auto& l : levels_) {
    for (const auto& g : l.gens) {
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
  }
  return out;
}

BigInt PermGroupBSGS::order() const {
  BigInt result = 1;
  for (const auto& l : levels_) result *= l.orbit.size();
  return result;
}

bool PermGroupBSGS::contains(const Perm& g) const {
  if (g.size() != degree_) return false;
  auto [h, j] = strip(g, 0);
  return j == levels_.size() && !first_moved(h);
}

}  // namespace dice
