#include "asrda/lr/synthetic_trainer.hpp"

#include <algorithm>
#include <cmath>

#include "asrda/error.hpp"
#include "asrda/rng.hpp"

namespace asrda::lr {

void SyntheticTrainerParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(wer0) && finite(wer_floor) && wer_floor >= 0.0 && wer_floor < wer0, ErrorCode::kInvalidArgument,
          "synthetic trainer needs 0 <= wer_floor < wer0");
  require(finite(alpha) && alpha >= 0.0, ErrorCode::kInvalidArgument, "alpha must be non-negative");
  require(finite(beta) && beta >= 0.0, ErrorCode::kInvalidArgument, "beta must be non-negative");
  require(finite(eta_star) && eta_star > 0.0, ErrorCode::kInvalidArgument, "eta_star must be positive");
  require(finite(base_jitter) && base_jitter >= 0.0, ErrorCode::kInvalidArgument,
          "base_jitter must be non-negative");
  require(finite(overfit_rate) && overfit_rate >= 0.0, ErrorCode::kInvalidArgument,
          "overfit_rate must be non-negative");
  require(finite(loss_scale) && finite(loss_decay) && finite(loss_floor) && loss_scale >= 0.0 && loss_decay >= 0.0,
          ErrorCode::kInvalidArgument, "loss parameters must be finite and non-negative");
}

SyntheticTrainer::SyntheticTrainer(const SyntheticTrainerParams& params) : params_(params), wer_(params.wer0) {
  params_.validate();
}

double SyntheticTrainer::floor_at(std::size_t step) const noexcept {
  if (params_.overfit_after_step == 0 || step <= params_.overfit_after_step) return params_.wer_floor;
  return params_.wer_floor + params_.overfit_rate * static_cast<double>(step - params_.overfit_after_step);
}

double SyntheticTrainer::loss() const noexcept {
  return params_.loss_scale * std::exp(-params_.loss_decay * tau_) + params_.loss_floor;
}

double SyntheticTrainer::train_steps(std::size_t n, double eta) {
  require(std::isfinite(eta) && eta > 0.0, ErrorCode::kInvalidArgument, "learning rate must be positive");
  require(n > 0, ErrorCode::kInvalidArgument, "step count must be positive");
  double loss_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ++steps_;
    const double floor = floor_at(steps_);
    wer_ = std::max(floor, wer_ - params_.alpha * eta * (wer_ - floor));
    tau_ += eta;
    loss_sum += loss();
  }
  last_eta_ = eta;
  return loss_sum / static_cast<double>(n);
}

double SyntheticTrainer::jitter_std() const noexcept {
  const double excess = std::max(0.0, last_eta_ / params_.eta_star - 1.0);
  return params_.beta * wer_ * excess + params_.base_jitter;
}

double SyntheticTrainer::evaluate() {
  double wer = wer_;
  const double sd = jitter_std();
  if (sd > 0.0) {
    CounterRng rng(derive_key(params_.seed, steps_));
    wer += sd * rng.normal();
  }
  wer = std::max(0.0, wer);
  if (params_.eval_set_tokens > 0) {
    const double n = static_cast<double>(params_.eval_set_tokens);
    wer = std::nearbyint(wer * n / 100.0) * 100.0 / n;
  }
  return wer;
}

}  // namespace asrda::lr
