#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asrda::lr {

enum class ModelFamily { kEncoderDecoder, kLlm };

std::string_view to_string(ModelFamily family) noexcept;
/// Accepts "encoder_decoder", "encoder-decoder", "enc-dec", "encdec" and "llm".
ModelFamily parse_family(std::string_view name);

/// Allowed learning-rate interval for a model family; 0 < eta_min < eta_max.
class LrBounds {
 public:
  /// Throws InvalidArgument unless 0 < eta_min < eta_max (both finite).
  LrBounds(double eta_min, double eta_max, ModelFamily family);

  /// [1e-7, 1e-5] for encoder-decoder models, [1e-6, 1e-4] for LLM-based models.
  static LrBounds defaults(ModelFamily family);

  double eta_min() const noexcept { return eta_min_; }
  double eta_max() const noexcept { return eta_max_; }
  ModelFamily family() const noexcept { return family_; }

 private:
  double eta_min_;
  double eta_max_;
  ModelFamily family_;
};

/// Reference WER standard deviation, in percentage points.
inline constexpr double kDefaultSigmaRef = 0.5;

/// Sample (n - 1) standard deviation. A constant sequence gives exactly 0.
/// Throws InsufficientData for fewer than two values.
double sample_std(std::span<const double> values);

/// One constant-rate training cycle and the WERs measured inside it.
struct CycleRecord {
  std::size_t cycle_index = 0;
  double eta = 0.0;
  std::vector<double> wer_evals;  // percent

  /// Sample standard deviation of wer_evals, percentage points.
  double sigma_wer() const { return sample_std(wer_evals); }
};

struct SchedulerConfig {
  LrBounds bounds = LrBounds::defaults(ModelFamily::kEncoderDecoder);
  double sigma_ref = kDefaultSigmaRef;
  std::size_t steps_per_cycle = 500;
  std::size_t eval_every = 50;
  std::size_t patience = 5;
  double min_delta = 0.1;
  std::size_t max_cycles = 100;
  /// Re-apply the variance rule every cycle for the LLM family as well.
  bool adapt_llm_per_cycle = false;
  /// Overrides the family's initial-rate rule when set.
  std::optional<double> initial_eta;

  /// Throws InvalidArgument when an invariant does not hold.
  void validate() const;
};

/// eta_max - (eta_max - eta_min) * clip(sigma / sigma_ref, 0, 1). The end
/// points are returned exactly: eta_max for sigma <= 0, eta_min for sigma >= sigma_ref.
double lr_from_sigma(double sigma, double sigma_ref, const LrBounds& bounds);

/// Rate for the cycle after `record`. Throws InsufficientData for fewer than two evaluations.
double next_cycle_lr(const CycleRecord& record, const SchedulerConfig& config);

/// eta_min + (eta_max - eta_min) * clip(wer0, 0, 100) / 100, exact at the end points.
/// Throws InvalidArgument for negative or non-finite wer0.
double initial_lr_llm(double wer0_percent, const LrBounds& bounds);

/// Geometric mean of the bounds.
double initial_lr_encdec(const LrBounds& bounds);

}  // namespace asrda::lr
