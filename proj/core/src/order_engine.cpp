#include "dice/order_engine.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace dice {

namespace {

constexpr std::uint64_t kOrderCeiling = std::uint64_t{1} << 62;

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > kOrderCeiling / b) return std::nullopt;
  return a * b;
}

/// lcm(a, b), or nullopt past the ceiling.
std::optional<std::uint64_t> checked_lcm(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t g = std::gcd(a, b);
  return checked_mul(a / g, b);
}

}  // namespace

std::uint64_t spine_order(const DiceConfig& config, int i) {
  if (i < 1) throw ConfigError("levels are numbered from 1");
  // Every level of the cycle recurs below any level, so only the prefix
  // levels strictly after i need separate treatment.
  std::uint64_t q = 1;
  for (const auto& l : config.cycle()) q = std::lcm(q, std::uint64_t{l.shape.p()});
  for (int j = i + 1; j <= config.prefix_length(); ++j) {
    q = std::lcm(q, std::uint64_t{config.level(j).shape.p()});
  }
  return q;
}

std::vector<std::pair<std::uint32_t, int>> factor_over(std::uint64_t n, const std::vector<std::uint32_t>& primes) {
  std::vector<std::pair<std::uint32_t, int>> out;
  for (auto p : primes) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k > 0) out.emplace_back(p, k);
  }
  if (n != 1) throw std::logic_error("order has a prime factor outside P");
  return out;
}

std::string reason_name(OrderResult::Reason r) {
  switch (r) {
    case OrderResult::Reason::Depth: return "depth";
    case OrderResult::Reason::MemoEntries: return "memo";
    case OrderResult::Reason::Divergence: return "divergence";
    case OrderResult::Reason::Bound: return "bound";
  }
  return "?";
}

std::string OrderResult::factorization_string() const {
  if (!finite_) return "";
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [p, k] : factors_) {
    if (!out.empty()) out += " * ";
    out += std::to_string(p);
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::string OrderResult::to_string() const {
  if (!finite_) return "EXCEEDED(" + reason_name(reason_) + ")";
  return std::to_string(order_) + " = " + factorization_string();
}

OrderLimits default_limits(const DiceConfig& config) {
  const auto primes = config.primes();
  const std::size_t pmax = primes.empty() ? 2 : primes.back();
  return {10 * static_cast<std::size_t>(config.class_count()) * pmax, 1'000'000};
}

OrderContext::OrderContext(const DiceGroup& group) : OrderContext(group, default_limits(group.config())) {}

OrderContext::OrderContext(const DiceGroup& group, OrderLimits limits) : group_(&group), limits_(limits) {
  if (limits.max_depth == 0 || limits.max_memo == 0) {
    throw ConfigError("order limits must be positive");
  }
}

std::uint64_t OrderContext::lookup(const ReducedWord& x) const {
  auto it = done_.find(StateKey::of(*group_, x));
  return it == done_.end() ? 0 : it->second;
}

OrderResult order(const DiceGroup& group, const ReducedWord& x, OrderContext& ctx) {
  if (&group != &ctx.group()) throw ConfigError("order context belongs to another group");
  const auto primes = group.config().primes();
  auto finite = [&](std::uint64_t n) { return OrderResult::finite(n, factor_over(n, primes)); };

  if (x.syllables().empty()) return finite(x.head() == 0 ? 1 : group.prime(x.level()));
  StateKey root_key = StateKey::of(group, x);
  if (auto it = ctx.done_.find(root_key); it != ctx.done_.end()) return finite(it->second);

  struct Node {
    ReducedWord word;
    std::size_t depth;
    std::uint64_t multiplier = 1;
    std::uint64_t constant = 1;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;
  std::unordered_map<StateKey, std::size_t, StateKeyHash> index;
  nodes.push_back({x, 0, 1, 1, {}});
  index.emplace(std::move(root_key), 0);

  // Discovery: each node's value is multiplier * lcm(constant, children).
  std::optional<OrderResult::Reason> failure;
  for (std::size_t i = 0; i < nodes.size() && !failure; ++i) {
    const ReducedWord w = nodes[i].word;
    const std::size_t depth = nodes[i].depth;
    std::uint64_t constant = 1;
    std::vector<std::size_t> children;

    auto attach = [&](const ReducedWord& s) {
      if (s.syllables().empty()) {
        if (s.head() != 0) constant = std::lcm(constant, std::uint64_t{group.prime(s.level())});
        return;
      }
      StateKey key = StateKey::of(group, s);
      if (auto it = ctx.done_.find(key); it != ctx.done_.end()) {
        constant = std::lcm(constant, it->second);
        return;
      }
      if (auto it = index.find(key); it != index.end()) {
        children.push_back(it->second);
        return;
      }
      if (depth + 1 > ctx.limits_.max_depth) {
        failure = OrderResult::Reason::Depth;
        return;
      }
      if (nodes.size() + ctx.done_.size() >= ctx.limits_.max_memo) {
        failure = OrderResult::Reason::MemoEntries;
        return;
      }
      index.emplace(std::move(key), nodes.size());
      children.push_back(nodes.size());
      nodes.push_back({s, depth + 1, 1, 1, {}});
    };

    std::uint64_t multiplier = 1;
    if (w.head() != 0) {
      multiplier = group.prime(w.level());
      attach(group.power(w, multiplier));
    } else {
      const WreathDecomposition d = ctx.eval().decompose(group, w);
      for (const auto& entry : d.sections) {
        attach(entry.second);
        if (failure) break;
      }
    }
    nodes[i].multiplier = multiplier;
    nodes[i].constant = constant;
    nodes[i].children = std::move(children);
  }
  if (failure) return OrderResult::exceeded(*failure);

  // Least fixed point by chaotic iteration from the all-ones assignment.
  const std::size_t n = nodes.size();
  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto c : nodes[i].children) parents[c].push_back(i);
  }
  std::vector<std::uint64_t> value(n, 1);
  std::vector<char> queued(n, 1);
  std::deque<std::size_t> work;
  for (std::size_t i = n; i-- > 0;) work.push_back(i);
  while (!work.empty()) {
    const std::size_t i = work.front();
    work.pop_front();
    queued[i] = 0;
    std::optional<std::uint64_t> v = nodes[i].constant;
    for (auto c : nodes[i].children) {
      v = checked_lcm(*v, value[c]);
      if (!v) return OrderResult::exceeded(OrderResult::Reason::Divergence);
    }
    const auto scaled = checked_mul(*v, nodes[i].multiplier);
    if (!scaled) return OrderResult::exceeded(OrderResult::Reason::Divergence);
    const std::uint64_t updated = *scaled;
    if (updated != value[i]) {
      value[i] = updated;
      for (auto p : parents[i]) {
        if (!queued[p]) {
          queued[p] = 1;
          work.push_back(p);
        }
      }
    }
  }

  // Kahn's algorithm: anything left over sits on a cycle.
  std::vector<std::size_t> pending(n);
  for (std::size_t i = 0; i < n; ++i) pending[i] = nodes[i].children.size();
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) ready.push_back(i);
  }
  std::size_t sorted = 0;
  while (!ready.empty()) {
    const auto i = ready.back();
    ready.pop_back();
    ++sorted;
    for (auto p : parents[i]) {
      if (--pending[p] == 0) ready.push_back(p);
    }
  }

  if (sorted != n) {
    std::uint64_t candidate = value[0];
    if (!is_trivial(group, group.power(x, candidate), ctx.eval())) {
      throw std::logic_error("order engine: least fixed point failed verification");
    }
    for (auto r : primes) {
      while (candidate % r == 0 && is_trivial(group, group.power(x, candidate / r), ctx.eval())) {
        candidate /= r;
      }
    }
    value[0] = candidate;
  }

  for (std::size_t i = 0; i < n; ++i) {
    ctx.done_.emplace(StateKey::of(group, nodes[i].word), value[i]);
  }
  return finite(value[0]);
}

OrderResult order(const DiceGroup& group, const ReducedWord& x) {
  OrderContext ctx(group);
  return order(group, x, ctx);
}

OrderResult brute_force_order(const DiceGroup& group, const ReducedWord& x, std::uint64_t bound, EvalContext& ctx) {
  if (bound < 1) throw ConfigError("brute force bound must be at least 1");
  ReducedWord y = x;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (is_trivial(group, y, ctx)) return OrderResult::finite(n, factor_over(n, group.config().primes()));
    y = group.multiply(y, x);
  }
  return OrderResult::exceeded(OrderResult::Reason::Bound);
}

OrderResult brute_force_order(const DiceGroup& group, const ReducedWord& x, std::uint64_t bound) {
  EvalContext ctx;
  return brute_force_order(group, x, bound, ctx);
}

}  // namespace dice
