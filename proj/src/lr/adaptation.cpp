#include "asrda/lr/adaptation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "asrda/error.hpp"
#include "asrda/lr/early_stop.hpp"

namespace asrda::lr {
namespace {

[[noreturn]] void rethrow_with_context(std::size_t cycle, std::size_t step) {
  const std::string where = "cycle " + std::to_string(cycle) + ", step " + std::to_string(step) + ": ";
  try {
    throw;
  } catch (const Error& e) {
    throw Error(e.code(), where + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(where + e.what());
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

AdaptationResult run_adaptation(Trainer& trainer, const SchedulerConfig& config) {
  config.validate();
  const bool llm = config.bounds.family() == ModelFamily::kLlm;
  const bool adapt = !llm || config.adapt_llm_per_cycle;

  AdaptationResult result;
  std::vector<double> history;
  std::size_t step = 0;

  double eta = 0.0;
  if (llm) {
    double wer0 = 0.0;
    try {
      wer0 = trainer.evaluate();
    } catch (...) {
      rethrow_with_context(0, 0);
    }
    eta = config.initial_eta ? *config.initial_eta : initial_lr_llm(wer0, config.bounds);
    result.trajectory.push_back({0, 0, eta, std::numeric_limits<double>::quiet_NaN(), wer0});
    history.push_back(wer0);
  } else {
    eta = config.initial_eta ? *config.initial_eta : initial_lr_encdec(config.bounds);
  }

  const std::size_t chunks = config.steps_per_cycle / config.eval_every;
  bool stopped = false;
  for (std::size_t j = 0; j < config.max_cycles && !stopped; ++j) {
    CycleRecord record{j, eta, {}};
    for (std::size_t c = 0; c < chunks; ++c) {
      double loss = 0.0;
      double wer = 0.0;
      try {
        loss = trainer.train_steps(config.eval_every, eta);
        wer = trainer.evaluate();
      } catch (...) {
        rethrow_with_context(j, step + config.eval_every);
      }
      step += config.eval_every;
      result.trajectory.push_back({step, j, eta, loss, wer});
      record.wer_evals.push_back(wer);
      history.push_back(wer);
      if (should_stop(history, config.patience, config.min_delta)) {
        stopped = true;
        break;
      }
    }
    result.final_eta = eta;
    const bool can_adapt = record.wer_evals.size() >= 2;
    result.cycles.push_back(std::move(record));
    if (!stopped && adapt && can_adapt) eta = next_cycle_lr(result.cycles.back(), config);
  }
  result.stopped_reason = stopped ? "converged" : "max_cycles";

  for (std::size_t i = 1; i < result.trajectory.size(); ++i) {
    if (result.trajectory[i].wer < result.trajectory[result.best_index].wer) result.best_index = i;
  }
  return result;
}

void write_trajectory_csv(const AdaptationResult& result, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "step,eta,loss,wer\n";
  for (const auto& p : result.trajectory) {
    out << p.step << ',' << format_number(p.eta) << ',' << format_number(p.loss) << ',' << format_number(p.wer)
        << '\n';
  }
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path.string());
}

nlohmann::json summary_json(const AdaptationResult& result) {
  const auto& best = result.best();
  return nlohmann::json{{"best_step", best.step},
                        {"best_wer", best.wer},
                        {"best_index", result.best_index},
                        {"final_eta", result.final_eta},
                        {"stopped_reason", result.stopped_reason},
                        {"cycles", result.cycles.size()},
                        {"evaluations", result.trajectory.size()}};
}

void write_summary_json(const AdaptationResult& result, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << summary_json(result).dump(2) << '\n';
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path.string());
}

}  // namespace asrda::lr
