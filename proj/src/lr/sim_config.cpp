#include "asrda/lr/sim_config.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <toml.hpp>

#include "asrda/error.hpp"

namespace asrda::lr {
namespace {

void reject_unknown(const toml::table& table, std::string_view name, const std::set<std::string>& known) {
  for (const auto& [key, value] : table) {
    if (!known.contains(std::string(key.str()))) {
      fail(ErrorCode::kParseError, "unknown key '" + std::string(name) + "." + std::string(key.str()) + "'");
    }
  }
}

const toml::table* subtable(const toml::table& root, std::string_view name, bool required) {
  const toml::node* node = root.get(name);
  if (!node) {
    require(!required, ErrorCode::kParseError, "missing [" + std::string(name) + "] table");
    return nullptr;
  }
  const toml::table* t = node->as_table();
  require(t != nullptr, ErrorCode::kParseError, "'" + std::string(name) + "' must be a table");
  return t;
}

class Reader {
 public:
  Reader(const toml::table* table, std::string_view name) : table_(table), name_(name) {}

  void number(std::string_view key, double& out) const {
    const toml::node* n = find(key);
    if (!n) return;
    if (auto v = n->value<double>()) {
      out = *v;
    } else {
      bad(key, "a number");
    }
  }

  void count(std::string_view key, std::size_t& out) const {
    const toml::node* n = find(key);
    if (!n) return;
    auto v = n->value_exact<std::int64_t>();
    if (!v || *v < 0) bad(key, "a non-negative integer");
    out = static_cast<std::size_t>(*v);
  }

  void seed(std::string_view key, std::uint64_t& out) const {
    std::size_t v = out;
    count(key, v);
    out = v;
  }

  void flag(std::string_view key, bool& out) const {
    const toml::node* n = find(key);
    if (!n) return;
    auto v = n->value_exact<bool>();
    if (!v) bad(key, "a boolean");
    out = *v;
  }

  std::optional<std::string> text(std::string_view key) const {
    const toml::node* n = find(key);
    if (!n) return std::nullopt;
    auto v = n->value_exact<std::string>();
    if (!v) bad(key, "a string");
    return v;
  }

  std::optional<double> optional_number(std::string_view key) const {
    if (!find(key)) return std::nullopt;
    double v = 0.0;
    number(key, v);
    return v;
  }

 private:
  const toml::node* find(std::string_view key) const { return table_ ? table_->get(key) : nullptr; }

  [[noreturn]] void bad(std::string_view key, std::string_view what) const {
    fail(ErrorCode::kParseError, "'" + std::string(name_) + "." + std::string(key) + "' must be " + std::string(what));
  }

  const toml::table* table_;
  std::string_view name_;
};

}  // namespace

SimulationConfig parse_simulation_config(std::string_view toml_text) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML error at line " << e.source().begin.line << ": " << e.description();
    fail(ErrorCode::kParseError, msg.str());
  }
  reject_unknown(root, "", {"scheduler", "trainer", "output"});

  SimulationConfig cfg;
  const toml::table* sched = subtable(root, "scheduler", true);
  const toml::table* trainer = subtable(root, "trainer", true);
  const toml::table* output = subtable(root, "output", false);
  reject_unknown(*sched, "scheduler",
                 {"family", "eta_min", "eta_max", "sigma_ref", "steps_per_cycle", "eval_every", "patience",
                  "min_delta", "max_cycles", "adapt_llm_per_cycle", "initial_eta"});
  reject_unknown(*trainer, "trainer",
                 {"wer0", "wer_floor", "alpha", "eta_star", "beta", "seed", "base_jitter", "eval_set_tokens",
                  "overfit_after_step", "overfit_rate", "loss_scale", "loss_decay", "loss_floor"});
  if (output) reject_unknown(*output, "output", {"trajectory", "summary"});

  try {
    Reader s(sched, "scheduler");
    ModelFamily family = ModelFamily::kEncoderDecoder;
    if (auto name = s.text("family")) family = parse_family(*name);
    const LrBounds defaults = LrBounds::defaults(family);
    double eta_min = defaults.eta_min();
    double eta_max = defaults.eta_max();
    s.number("eta_min", eta_min);
    s.number("eta_max", eta_max);
    SchedulerConfig& sc = cfg.scheduler;
    sc.bounds = LrBounds(eta_min, eta_max, family);
    s.number("sigma_ref", sc.sigma_ref);
    s.count("steps_per_cycle", sc.steps_per_cycle);
    s.count("eval_every", sc.eval_every);
    s.count("patience", sc.patience);
    s.number("min_delta", sc.min_delta);
    s.count("max_cycles", sc.max_cycles);
    s.flag("adapt_llm_per_cycle", sc.adapt_llm_per_cycle);
    sc.initial_eta = s.optional_number("initial_eta");
    sc.validate();

    Reader t(trainer, "trainer");
    SyntheticTrainerParams& tp = cfg.trainer;
    t.number("wer0", tp.wer0);
    t.number("wer_floor", tp.wer_floor);
    t.number("alpha", tp.alpha);
    t.number("eta_star", tp.eta_star);
    t.number("beta", tp.beta);
    t.seed("seed", tp.seed);
    t.number("base_jitter", tp.base_jitter);
    t.count("eval_set_tokens", tp.eval_set_tokens);
    t.count("overfit_after_step", tp.overfit_after_step);
    t.number("overfit_rate", tp.overfit_rate);
    t.number("loss_scale", tp.loss_scale);
    t.number("loss_decay", tp.loss_decay);
    t.number("loss_floor", tp.loss_floor);
    tp.validate();

    Reader o(output, "output");
    if (auto p = o.text("trajectory")) cfg.trajectory_path = *p;
    if (auto p = o.text("summary")) cfg.summary_path = *p;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    fail(ErrorCode::kParseError, e.what());
  }
  return cfg;
}

SimulationConfig load_simulation_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_simulation_config(text.str());
}

}  // namespace asrda::lr
