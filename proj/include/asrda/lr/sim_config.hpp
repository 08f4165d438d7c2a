#pragma once

#include <filesystem>
#include <string_view>

#include "asrda/lr/schedule.hpp"
#include "asrda/lr/synthetic_trainer.hpp"

namespace asrda::lr {

/// Scheduler and synthetic-trainer settings for an offline simulation.
struct SimulationConfig {
  SchedulerConfig scheduler;
  SyntheticTrainerParams trainer;
  std::filesystem::path trajectory_path = "trajectory.csv";
  std::filesystem::path summary_path = "summary.json";
};

/// Parses TOML with [scheduler], [trainer] and optional [output] tables.
/// Unknown keys and out-of-range values throw ParseError; the message names the key.
SimulationConfig parse_simulation_config(std::string_view toml_text);
/// Throws Io when the file cannot be read.
SimulationConfig load_simulation_config(const std::filesystem::path& path);

}  // namespace asrda::lr
