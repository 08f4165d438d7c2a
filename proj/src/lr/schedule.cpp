#include "asrda/lr/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asrda/error.hpp"

namespace asrda::lr {

std::string_view to_string(ModelFamily family) noexcept {
  return family == ModelFamily::kLlm ? "llm" : "encoder_decoder";
}

ModelFamily parse_family(std::string_view name) {
  if (name == "llm") return ModelFamily::kLlm;
  if (name == "encoder_decoder" || name == "encoder-decoder" || name == "enc-dec" || name == "encdec") {
    return ModelFamily::kEncoderDecoder;
  }
  fail(ErrorCode::kInvalidArgument, "unknown model family '" + std::string(name) + "'");
}

LrBounds::LrBounds(double eta_min, double eta_max, ModelFamily family)
    : eta_min_(eta_min), eta_max_(eta_max), family_(family) {
  require(std::isfinite(eta_min) && std::isfinite(eta_max), ErrorCode::kInvalidArgument,
          "learning-rate bounds must be finite");
  require(eta_min > 0.0 && eta_min < eta_max, ErrorCode::kInvalidArgument,
          "learning-rate bounds must satisfy 0 < eta_min < eta_max");
}

LrBounds LrBounds::defaults(ModelFamily family) {
  return family == ModelFamily::kLlm ? LrBounds(1e-6, 1e-4, family) : LrBounds(1e-7, 1e-5, family);
}

double sample_std(std::span<const double> values) {
  require(values.size() >= 2, ErrorCode::kInsufficientData, "standard deviation needs at least two values");
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return std::sqrt(sq / static_cast<double>(values.size() - 1));
}

void SchedulerConfig::validate() const {
  require(sigma_ref > 0.0 && std::isfinite(sigma_ref), ErrorCode::kInvalidArgument, "sigma_ref must be positive");
  require(eval_every > 0 && steps_per_cycle > 0, ErrorCode::kInvalidArgument, "step counts must be positive");
  require(eval_every <= steps_per_cycle && steps_per_cycle % eval_every == 0, ErrorCode::kInvalidArgument,
          "steps_per_cycle must be a positive multiple of eval_every");
  require(patience >= 1, ErrorCode::kInvalidArgument, "patience must be >= 1");
  require(min_delta >= 0.0, ErrorCode::kInvalidArgument, "min_delta must be non-negative");
  require(max_cycles >= 1, ErrorCode::kInvalidArgument, "max_cycles must be >= 1");
  const bool adapts = bounds.family() == ModelFamily::kEncoderDecoder || adapt_llm_per_cycle;
  require(!adapts || steps_per_cycle / eval_every >= 2, ErrorCode::kInvalidArgument,
          "adaptive cycles need at least two evaluations per cycle");
  if (initial_eta) {
    require(*initial_eta > 0.0 && std::isfinite(*initial_eta), ErrorCode::kInvalidArgument,
            "initial_eta must be positive");
  }
}

double lr_from_sigma(double sigma, double sigma_ref, const LrBounds& bounds) {
  require(sigma_ref > 0.0, ErrorCode::kInvalidArgument, "sigma_ref must be positive");
  require(!std::isnan(sigma), ErrorCode::kInvalidArgument, "sigma is NaN");
  const double ratio = std::clamp(sigma / sigma_ref, 0.0, 1.0);
  if (ratio <= 0.0) return bounds.eta_max();
  if (ratio >= 1.0) return bounds.eta_min();
  const double eta = bounds.eta_max() - (bounds.eta_max() - bounds.eta_min()) * ratio;
  return std::clamp(eta, bounds.eta_min(), bounds.eta_max());
}

double next_cycle_lr(const CycleRecord& record, const SchedulerConfig& config) {
  return lr_from_sigma(record.sigma_wer(), config.sigma_ref, config.bounds);
}

double initial_lr_llm(double wer0_percent, const LrBounds& bounds) {
  require(std::isfinite(wer0_percent) && wer0_percent >= 0.0, ErrorCode::kInvalidArgument,
          "baseline WER must be a non-negative percentage");
  const double gap = std::min(wer0_percent, 100.0);
  if (gap >= 100.0) return bounds.eta_max();
  return bounds.eta_min() + (bounds.eta_max() - bounds.eta_min()) * gap / 100.0;
}

double initial_lr_encdec(const LrBounds& bounds) { return std::sqrt(bounds.eta_min() * bounds.eta_max()); }

}  // namespace asrda::lr
