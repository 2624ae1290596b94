#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "dice/errors.hpp"
#include "dice/level_quotient.hpp"
#include "dice/order_engine.hpp"
#include "dice/presets.hpp"

namespace dice::cli {

namespace {

struct Options {
  std::string config_path;
  std::string preset;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::optional<std::size_t> limit_depth;
  std::optional<std::size_t> limit_memo;

  std::string condition = "ddmin";
  std::optional<int> steps;
  std::string word;
  int level = 1;
  std::string verify_target;
  std::size_t count = 100;
  std::size_t max_wlen = 6;
  std::string vertex;
  int depth = 1;
  std::string output;
  std::vector<std::string> words;
};

DiceConfig load(const Options& o) {
  if (!o.config_path.empty() && !o.preset.empty()) throw ConfigError("give either --config or --preset, not both");
  if (!o.config_path.empty()) return load_config(o.config_path);
  if (!o.preset.empty()) return preset_by_name(o.preset).config;
  throw ConfigError("a config is required: --config PATH or --preset NAME");
}

OrderLimits limits(const Options& o, const DiceConfig& config) {
  OrderLimits l = default_limits(config);
  if (o.limit_depth) l.max_depth = *o.limit_depth;
  if (o.limit_memo) l.max_memo = *o.limit_memo;
  return l;
}

bool smooth(std::uint64_t n, const std::vector<std::uint32_t>& primes) {
  for (auto p : primes) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

std::string prime_set(const std::vector<std::uint32_t>& primes) {
  std::string s = "{";
  for (std::size_t k = 0; k < primes.size(); ++k) s += (k ? "," : "") + std::to_string(primes[k]);
  return s + "}";
}

// --- check -----------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  const DiceConfig config = load(o);
  const Condition cond = parse_condition(o.condition);
  const int i_max = o.steps.value_or(config.class_count());
  if (i_max < 1) throw ConfigError("--steps must be at least 1");
  const bool tsv = o.format == "tsv";

  bool any_not = false, any_undetermined = false;
  if (tsv) out << "step\tverdict\twitness\n";
  for (int i = 1; i <= i_max; ++i) {
    const LuckyVerdict v = check(config, i, cond);
    any_not = any_not || v.kind() == LuckyVerdict::Kind::NotLucky;
    any_undetermined = any_undetermined || v.kind() == LuckyVerdict::Kind::Undetermined;
    const std::string witness = v.witness() ? v.witness()->to_string() : "";
    if (tsv) {
      out << i << '\t' << v.to_string() << '\t' << witness << '\n';
    } else {
      out << "step " << i << ": " << v.to_string() << '\n';
    }
  }

  // Every config is eventually periodic: one pass over the cycle decides it.
  bool cycle_lucky = false, cycle_undetermined = false;
  for (int i = config.prefix_length() + 1; i <= config.class_count(); ++i) {
    const auto kind = check(config, i, cond).kind();
    cycle_lucky = cycle_lucky || kind == LuckyVerdict::Kind::Lucky;
    cycle_undetermined = cycle_undetermined || kind == LuckyVerdict::Kind::Undetermined;
  }
  if (!tsv) {
    out << "condition " << condition_name(cond) << ", period " << config.period() << "\n";
    out << "lucky at infinitely many steps: "
        << (cycle_lucky ? "yes" : cycle_undetermined ? "undetermined" : "no") << '\n';
  }
  if (any_not) return 1;
  if (any_undetermined) return 2;
  return 0;
}

// --- order -----------------------------------------------------------------

int cmd_order(const Options& o, std::ostream& out) {
  const DiceConfig config = load(o);
  const DiceGroup group(config);
  const ReducedWord x = group.parse(o.level, o.word);
  OrderContext ctx(group, limits(o, config));
  const OrderResult r = order(group, x, ctx);
  if (o.format == "tsv") {
    out << "word\torder\tfactorization\n";
    out << o.word << '\t' << (r.is_finite() ? std::to_string(r.order()) : r.to_string()) << '\t'
        << r.factorization_string() << '\n';
  } else {
    out << r.to_string() << '\n';
  }
  return r.is_finite() ? 0 : 1;
}

// --- verify ----------------------------------------------------------------

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  void claim(const std::string& what, const std::function<bool()>& test) {
    bool ok = false;
    std::string note;
    try {
      ok = test();
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    failures_ += !ok;
    out_ << (ok ? "PASS  " : "FAIL  ") << what << note << '\n';
  }

  int exit_code() const { return failures_ == 0 ? 0 : 1; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

BigInt quotient(const DiceGroup& g, const std::vector<std::string>& words, int n) {
  std::vector<LevelPermutation> gens;
  for (const auto& w : words) gens.push_back(project(g, g.parse(1, w), n));
  return group_order(gens);
}

StabilizedOrder stabilized(const DiceGroup& g, const std::vector<std::string>& words, int n_max) {
  std::vector<ReducedWord> xs;
  for (const auto& w : words) xs.push_back(g.parse(1, w));
  return stabilized_order(g, xs, n_max);
}

void verify_tetrahedron(Report& r, const OrderLimits& lim) {
  const DiceGroup g(tetrahedron().config);
  OrderContext ctx(g, lim);
  auto order_of = [&](const std::string& w) { return order(g, g.parse(1, w), ctx); };

  r.claim("order(w) = order(a1) = order(a2) = order(a3) = 2", [&] {
    const std::vector<std::string> words{"w", "a1", "a2", "a3"};
    return std::all_of(words.begin(), words.end(), [&](const std::string& w) { return order_of(w).order() == 2; });
  });
  r.claim("order(a1 a2) = order(a1 a3) = order(a2 a3) = 2", [&] {
    return order_of("a1 a2").order() == 2 && order_of("a1 a3").order() == 2 && order_of("a2 a3").order() == 2;
  });
  r.claim("|<a1, a2, a3>| = 8 at levels 1..4", [&] {
    for (int n = 1; n <= 4; ++n) {
      if (quotient(g, {"a1", "a2", "a3"}, n) != 8) return false;
    }
    return true;
  });
  r.claim("order(w a1) = 4", [&] { return order_of("w a1").order() == 4; });
  r.claim("|<a1, w>| = 8 at levels 2, 3, 4", [&] {
    for (int n = 2; n <= 4; ++n) {
      if (quotient(g, {"a1", "w"}, n) != 8) return false;
    }
    return true;
  });
  r.claim("|<a1, a2, w>| = 256 at level 3", [&] { return quotient(g, {"a1", "a2", "w"}, 3) == 256; });
  r.claim("<a1, a2, w> stabilizes at 256", [&] {
    const auto s = stabilized(g, {"a1", "a2", "w"}, 5);
    return s.stabilized && s.order == 256;
  });
  r.claim("[w_k, w_s] = 1 for k red, s black (16 pairs)", [&] {
    for (auto k : red_vertices()) {
      for (auto s : black_vertices()) {
        if (!is_trivial(g, g.commutator(w_k(g, k), w_k(g, s)), ctx.eval())) return false;
      }
    }
    return true;
  });
  r.claim("<w_k, w_s> on level 3 has exponent dividing 4 for k, s of one colour", [&] {
    for (const auto& side : {red_vertices(), black_vertices()}) {
      for (auto k : side) {
        for (auto s : side) {
          if (k >= s) continue;
          const std::vector<LevelPermutation> gens{project(g, w_k(g, k), 3), project(g, w_k(g, s), 3)};
          const auto all = enumerate_group(gens, 10000);
          if (!all) return false;
          for (const auto& e : *all) {
            if (4 % e.order() != 0) return false;
          }
        }
      }
    }
    return true;
  });
  for (const auto& subset : std::vector<std::vector<std::string>>{
           {"a1", "a2", "a3"}, {"w", "a1", "a2"}, {"w", "a1", "a3"}, {"w", "a2", "a3"}}) {
    std::string name;
    for (const auto& w : subset) name += (name.empty() ? "" : ", ") + w;
    r.claim("<" + name + "> is finite: quotient orders stabilize by level 5",
            [&] { return stabilized(g, subset, 5).stabilized; });
  }
  r.claim("<w, a1, a2, a3> does not stabilize by level 5", [&] {
    return !stabilized(g, {"w", "a1", "a2", "a3"}, 5).stabilized;
  });
}

void verify_c3_square(Report& r, const OrderLimits& lim) {
  const Preset p = c3_square_ddmin();
  const DiceGroup g(p.config);
  r.claim("ddmin holds at steps 1..4", [&] {
    for (int i = 1; i <= 4; ++i) {
      if (!check_ddmin(p.config, i).is_lucky()) return false;
    }
    return true;
  });
  r.claim("ddmax-1 fails at step 1", [&] { return check_ddmax1(p.config, 1).kind() == LuckyVerdict::Kind::NotLucky; });
  r.claim("spine_order(1) = 3", [&] { return spine_order(p.config, 1) == 3; });
  r.claim("100 sampled words of w-length <= 4 have orders that are powers of 3", [&] {
    std::mt19937_64 rng(1);
    OrderContext ctx(g, lim);
    for (int k = 0; k < 100; ++k) {
      const auto res = order(g, sample_element(g, 1, 4, rng), ctx);
      if (!res.is_finite() || !smooth(res.order(), {3})) return false;
    }
    return true;
  });
}

void verify_c3_mixed(Report& r, const OrderLimits& lim) {
  const Preset p = c3_mixed_start();
  const DiceGroup g(p.config);
  r.claim("w sections at 0, 1, 2 are w_2, a_21, a_22", [&] {
    const auto d = g.decompose(g.parse(1, "w"));
    return d.top == 0 && d.sections.size() == 3 && *d.section_at(0) == g.parse(2, "w") &&
           *d.section_at(1) == g.parse(2, "a1") && *d.section_at(2) == g.parse(2, "a2");
  });
  r.claim("|pi_1(<a1, w>)| = 3", [&] { return quotient(g, {"a1", "w"}, 1) == 3; });
  r.claim("order(a1 w) is a power of 3 and matches brute force", [&] {
    OrderContext ctx(g, lim);
    const auto x = g.parse(1, "a1 w");
    const auto res = order(g, x, ctx);
    return res.is_finite() && smooth(res.order(), {3}) && res == brute_force_order(g, x, 729);
  });
  r.claim("ddmin fails at step 1 (both Y points on one line)",
          [&] { return check_ddmin(p.config, 1).kind() == LuckyVerdict::Kind::NotLucky; });
  r.claim("ddmin holds at steps 2..4", [&] {
    for (int i = 2; i <= 4; ++i) {
      if (!check_ddmin(p.config, i).is_lucky()) return false;
    }
    return true;
  });
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::string name = o.verify_target.empty() ? o.preset : o.verify_target;
  if (name.empty()) throw ConfigError("verify needs a preset name");
  const Preset p = preset_by_name(name);
  Report report(out);
  const OrderLimits lim = limits(o, p.config);
  if (p.name == "tetrahedron") verify_tetrahedron(report, lim);
  if (p.name == "c3-square") verify_c3_square(report, lim);
  if (p.name == "c3-mixed") verify_c3_mixed(report, lim);
  return report.exit_code();
}

// --- sample ----------------------------------------------------------------

int cmd_sample(const Options& o, std::ostream& out) {
  const DiceConfig config = load(o);
  const DiceGroup group(config);
  const auto primes = config.primes();
  std::mt19937_64 rng(o.seed);
  OrderContext ctx(group, limits(o, config));
  const bool tsv = o.format == "tsv";

  std::map<std::uint64_t, std::size_t> histogram;
  std::map<std::string, std::size_t> failures;
  if (tsv) out << "index\tword\tw_length\torder\n";
  for (std::size_t k = 0; k < o.count; ++k) {
    const ReducedWord x = sample_element(group, o.level, o.max_wlen, rng);
    const OrderResult r = order(group, x, ctx);
    if (r.is_finite() && smooth(r.order(), primes)) {
      ++histogram[r.order()];
    } else {
      ++failures[r.to_string()];
    }
    if (tsv) {
      out << k << '\t' << group.format(x) << '\t' << x.w_length() << '\t'
          << (r.is_finite() ? std::to_string(r.order()) : r.to_string()) << '\n';
    }
  }
  if (!tsv) {
    out << "samples " << o.count << ", max w-length " << o.max_wlen << ", seed " << o.seed << '\n';
    for (const auto& [n, c] : histogram) out << "order " << n << ": " << c << '\n';
    for (const auto& [what, c] : failures) out << what << ": " << c << '\n';
    out << "all orders finite and " << prime_set(primes) << "-smooth: " << (failures.empty() ? "yes" : "no")
        << '\n';
  }
  return failures.empty() ? 0 : 1;
}

// --- act / portrait / quotient ---------------------------------------------

int cmd_act(const Options& o, std::ostream& out) {
  const DiceGroup group(load(o));
  const ReducedWord x = group.parse(o.level, o.word);
  const auto v = parse_vertex(o.vertex);
  out << format_vertex(group.act(x, v)) << '\n';
  return 0;
}

int cmd_portrait(const Options& o, std::ostream& out) {
  const DiceGroup group(load(o));
  const ReducedWord x = group.parse(o.level, o.word);
  const Portrait p = group.portrait(x, o.depth);
  const std::string text = o.format == "dot" ? p.to_dot() : p.to_text();
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream file(o.output, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + o.output);
    file << text;
  }
  return 0;
}

int cmd_quotient(const Options& o, std::ostream& out) {
  const DiceGroup group(load(o));
  if (o.words.empty()) throw ConfigError("quotient needs --words");
  std::vector<LevelPermutation> gens;
  for (const auto& w : o.words) gens.push_back(project(group, group.parse(1, w), o.level));
  out << group_order(gens) << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dice groups: element orders, lucky-roll checks and level quotients", "dice"};
  app.fallthrough();
  app.require_subcommand(1);
  auto* config_opt = app.add_option("--config", o.config_path, "Config file");
  auto* preset_opt = app.add_option("--preset", o.preset, "Built-in config: tetrahedron, c3-square, c3-mixed");
  config_opt->excludes(preset_opt);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "tsv", "dot"}));
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--limit-depth", o.limit_depth, "Order engine recursion limit")->check(CLI::PositiveNumber);
  app.add_option("--limit-memo", o.limit_memo, "Order engine memo limit")->check(CLI::PositiveNumber);

  auto* check_cmd = app.add_subcommand("check", "Lucky-roll verdicts per step");
  check_cmd->add_option("--condition", o.condition, "d, dd, ddmax, ddmax-1 or ddmin");
  check_cmd->add_option("--steps", o.steps, "Steps to report (default: prefix + period)");

  auto* order_cmd = app.add_subcommand("order", "Exact order of a word");
  order_cmd->add_option("--word", o.word, "Word such as \"w a1\"")->required();
  order_cmd->add_option("--level", o.level, "Level of the element")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Run the checks attached to a preset");
  verify_cmd->add_option("preset", o.verify_target, "Preset name");

  auto* sample_cmd = app.add_subcommand("sample", "Orders of seeded random words");
  sample_cmd->add_option("--count", o.count, "Number of words");
  sample_cmd->add_option("--max-wlen", o.max_wlen, "Largest w-length");
  sample_cmd->add_option("--level", o.level, "Level of the elements")->check(CLI::PositiveNumber);

  auto* act_cmd = app.add_subcommand("act", "Image of a vertex");
  act_cmd->add_option("--word", o.word, "Word")->required();
  act_cmd->add_option("--vertex", o.vertex, "Dotted vertex path, e.g. 3.0")->required();
  act_cmd->add_option("--level", o.level, "Level of the element")->check(CLI::PositiveNumber);

  auto* portrait_cmd = app.add_subcommand("portrait", "Portrait of a word to a depth");
  portrait_cmd->add_option("--word", o.word, "Word")->required();
  portrait_cmd->add_option("--depth", o.depth, "Depth")->check(CLI::NonNegativeNumber);
  portrait_cmd->add_option("--output", o.output, "Write to a file instead of stdout");
  portrait_cmd->add_option("--level", o.level, "Level of the element")->check(CLI::PositiveNumber);

  auto* quotient_cmd = app.add_subcommand("quotient", "Order of the level-n quotient of <words>");
  quotient_cmd->add_option("--words", o.words, "Comma separated words")->delimiter(',')->required();
  quotient_cmd->add_option("--level", o.level, "Tree level n")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (check_cmd->parsed()) return cmd_check(o, out);
    if (order_cmd->parsed()) return cmd_order(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (sample_cmd->parsed()) return cmd_sample(o, out);
    if (act_cmd->parsed()) return cmd_act(o, out);
    if (portrait_cmd->parsed()) return cmd_portrait(o, out);
    if (quotient_cmd->parsed()) return cmd_quotient(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace dice::cli
