#pragma once

#include <cstddef>

namespace asrda::lr {

/// Boundary to a fine-tuning job.
class Trainer {
 public:
  virtual ~Trainer() = default;

  /// Runs n optimizer steps at learning rate eta and returns their mean loss.
  virtual double train_steps(std::size_t n, double eta) = 0;

  /// Validation WER in percent. Must not change model state.
  virtual double evaluate() = 0;
};

}  // namespace asrda::lr
