#pragma once

#include <cstddef>
#include <cstdint>

#include "asrda/lr/trainer.hpp"

namespace asrda::lr {

struct SyntheticTrainerParams {
  double wer0 = 40.0;       // percent
  double wer_floor = 15.0;  // percent
  double alpha = 1e5;       // convergence gain per unit of eta per step
  double eta_star = 1e-5;   // stability threshold
  double beta = 0.05;       // noise gain above eta_star
  std::uint64_t seed = 0;
  double base_jitter = 0.05;  // percentage points

  /// When non-zero, evaluations are rounded to a multiple of 100 / eval_set_tokens,
  /// like a WER counted on a validation set with that many reference tokens.
  std::size_t eval_set_tokens = 0;

  /// When non-zero, the floor rises by overfit_rate points per step after this step.
  std::size_t overfit_after_step = 0;
  double overfit_rate = 0.0;

  double loss_scale = 2.0;
  double loss_decay = 2e3;
  double loss_floor = 0.3;

  /// Throws InvalidArgument when a parameter is out of range.
  void validate() const;
};

/// Deterministic stand-in for a fine-tuning job. Each step contracts the
/// clean WER toward the floor by alpha * eta. evaluate() adds Gaussian noise
/// whose standard deviation is beta * wer * max(0, eta / eta_star - 1) + base_jitter,
/// seeded from (seed, step), so repeated evaluations at one step agree.
class SyntheticTrainer final : public Trainer {
 public:
  explicit SyntheticTrainer(const SyntheticTrainerParams& params);

  double train_steps(std::size_t n, double eta) override;
  double evaluate() override;

  std::size_t steps() const noexcept { return steps_; }
  /// Noise-free WER of the current state.
  double clean_wer() const noexcept { return wer_; }
  /// Standard deviation evaluate() uses at the current state.
  double jitter_std() const noexcept;
  double loss() const noexcept;

 private:
  double floor_at(std::size_t step) const noexcept;

  SyntheticTrainerParams params_;
  double wer_;
  double last_eta_ = 0.0;
  double tau_ = 0.0;
  std::size_t steps_ = 0;
};

}  // namespace asrda::lr
