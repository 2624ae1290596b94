#pragma once

// Exact element orders. The recursion follows the periodicity argument:
// a nonzero head contributes its prime and passes to the p-th power, which
// stabilizes the first level; a level-1 stabilizer element has the lcm of
// its sections' orders. Self-referential states are resolved as the least
// fixed point of that lcm system.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dice/element.hpp"

namespace dice {

/// Closed-form order of w_i: lcm of the primes p_j, j > i.
std::uint64_t spine_order(const DiceConfig& config, int i);

class OrderResult {
 public:
  enum class Reason {
    Depth,        // recursion deeper than the limit
    MemoEntries,  // more distinct states than the limit
    Divergence,   // the lcm system has no finite solution within 2^62
    Bound,        // brute force passed its bound
  };

  static OrderResult finite(std::uint64_t order, std::vector<std::pair<std::uint32_t, int>> factors) {
    return OrderResult(order, std::move(factors), Reason::Depth, true);
  }
  static OrderResult exceeded(Reason r) { return OrderResult(0, {}, r, false); }

  bool is_finite() const noexcept { return finite_; }
  std::uint64_t order() const noexcept { return order_; }
  /// (prime, multiplicity) ascending.
  const std::vector<std::pair<std::uint32_t, int>>& factorization() const noexcept { return factors_; }
  Reason reason() const noexcept { return reason_; }
  std::string to_string() const;
  std::string factorization_string() const;

  friend bool operator==(const OrderResult& a, const OrderResult& b) {
    return a.finite_ == b.finite_ && (a.finite_ ? a.order_ == b.order_ : a.reason_ == b.reason_);
  }

 private:
  OrderResult(std::uint64_t order, std::vector<std::pair<std::uint32_t, int>> factors, Reason r, bool finite)
      : order_(order), factors_(std::move(factors)), reason_(r), finite_(finite) {}

  std::uint64_t order_;
  std::vector<std::pair<std::uint32_t, int>> factors_;
  Reason reason_;
  bool finite_;
};

std::string reason_name(OrderResult::Reason r);

struct OrderLimits {
  std::size_t max_depth = 0;
  std::size_t max_memo = 0;
};

/// 10 * (|prefix| + M) * max(P) recursion depth, 10^6 memo entries.
OrderLimits default_limits(const DiceConfig& config);

/// Memo of solved states for one DiceGroup. Single owner; use one context
/// per thread.
class OrderContext {
 public:
  explicit OrderContext(const DiceGroup& group);
  OrderContext(const DiceGroup& group, OrderLimits limits);

  const DiceGroup& group() const noexcept { return *group_; }
  const OrderLimits& limits() const noexcept { return limits_; }
  EvalContext& eval() noexcept { return eval_; }
  std::size_t memo_size() const noexcept { return done_.size(); }
  /// Solved order of a state, 0 when unknown.
  std::uint64_t lookup(const ReducedWord& x) const;

 private:
  friend OrderResult order(const DiceGroup&, const ReducedWord&, OrderContext&);

  const DiceGroup* group_;
  OrderLimits limits_;
  EvalContext eval_;
  std::unordered_map<StateKey, std::uint64_t, StateKeyHash> done_;
};

/// Exact order of x, or Exceeded when a limit was hit.
OrderResult order(const DiceGroup& group, const ReducedWord& x, OrderContext& ctx);
OrderResult order(const DiceGroup& group, const ReducedWord& x);

/// Least n <= bound with x^n trivial, by repeated multiplication.
OrderResult brute_force_order(const DiceGroup& group, const ReducedWord& x, std::uint64_t bound,
                              EvalContext& ctx);
OrderResult brute_force_order(const DiceGroup& group, const ReducedWord& x, std::uint64_t bound);

inline ReducedWord power(const DiceGroup& group, const ReducedWord& x, std::uint64_t k) {
  return group.power(x, k);
}

/// Factorization of n over the given primes; throws std::logic_error if a
/// cofactor outside the set remains.
std::vector<std::pair<std::uint32_t, int>> factor_over(std::uint64_t n, const std::vector<std::uint32_t>& primes);

}  // namespace dice
