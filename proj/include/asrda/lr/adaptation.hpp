#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "asrda/lr/schedule.hpp"
#include "asrda/lr/trainer.hpp"

namespace asrda::lr {

/// One evaluation. The LLM family records its baseline at step 0 with a NaN loss.
struct TrajectoryPoint {
  std::size_t step = 0;
  std::size_t cycle = 0;
  double eta = 0.0;
  double loss = 0.0;
  double wer = 0.0;
};

struct AdaptationResult {
  std::vector<TrajectoryPoint> trajectory;
  std::vector<CycleRecord> cycles;
  std::size_t best_index = 0;  // argmin WER over trajectory, first on ties
  double final_eta = 0.0;      // rate of the last cycle that ran
  std::string stopped_reason;  // "converged" or "max_cycles"

  const TrajectoryPoint& best() const { return trajectory.at(best_index); }
};

/// Cyclic learning-rate control. The family comes from config.bounds.
/// Trainer failures are rethrown with the cycle and step prefixed.
AdaptationResult run_adaptation(Trainer& trainer, const SchedulerConfig& config);

/// CSV with header step,eta,loss,wer; a missing loss is written as nan.
void write_trajectory_csv(const AdaptationResult& result, const std::filesystem::path& path);

/// {best_step, best_wer, final_eta, stopped_reason} plus cycle and evaluation counts.
nlohmann::json summary_json(const AdaptationResult& result);
void write_summary_json(const AdaptationResult& result, const std::filesystem::path& path);

}  // namespace asrda::lr
