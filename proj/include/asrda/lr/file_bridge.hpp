#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>

#include "asrda/lr/trainer.hpp"

namespace asrda::lr {

struct FileBridgeOptions {
  std::filesystem::path command_file;
  std::filesystem::path result_file;
  std::chrono::milliseconds timeout{std::chrono::minutes(30)};
  std::chrono::milliseconds poll_interval{50};
};

/// Drives an external training job through two append-only JSONL files.
/// Each exchange appends {"eta": ..., "steps": ...} to the command file and
/// waits for one {"loss": ..., "wer": ...} line in the result file. A command
/// with "steps": 0 asks for an evaluation only; its loss may be null.
/// Result lines present before construction are ignored.
class FileBridgeTrainer final : public Trainer {
 public:
  explicit FileBridgeTrainer(FileBridgeOptions options);

  double train_steps(std::size_t n, double eta) override;
  /// Returns the WER reported with the last training chunk, or requests one.
  double evaluate() override;

 private:
  struct Reply {
    std::optional<double> loss;
    double wer;
  };
  Reply exchange(double eta, std::size_t steps);

  FileBridgeOptions options_;
  std::size_t consumed_ = 0;
  double last_eta_ = 0.0;
  std::optional<double> last_wer_;
};

}  // namespace asrda::lr
