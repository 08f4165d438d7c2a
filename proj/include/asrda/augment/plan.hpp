#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "asrda/augment/assets.hpp"
#include "asrda/augment/operators.hpp"
#include "asrda/profile/manifest.hpp"
#include "asrda/profile/profile.hpp"

namespace asrda::augment {

inline constexpr const char* kWhiteNoiseId = "white";

/// Fully sampled parameters for augmenting one source file.
struct PlanEntry {
  std::string source_path;
  std::uint64_t seed = 0;
  int target_sample_rate = 16000;
  int target_bit_depth = 16;
  bool apply_reverb = false;
  std::optional<std::string> rir_id;
  double target_snr_db = 0.0;
  std::string noise_id = kWhiteNoiseId;
  double target_lufs = -23.0;
  FilterSpec filter;
  /// tanh drive; present only for presets that saturate.
  std::optional<double> saturation_drive;

  bool operator==(const PlanEntry&) const = default;
};

void to_json(nlohmann::json& j, const PlanEntry& e);
void from_json(const nlohmann::json& j, PlanEntry& e);

struct WeightedValue {
  int value = 0;
  std::size_t weight = 0;

  bool operator==(const WeightedValue&) const = default;
};

/// How F_filt is chosen for each file.
struct FilterRule {
  enum class Mode { kFromRolloff, kFixed };
  Mode mode = Mode::kFromRolloff;
  FilterSpec fixed;                   // kFixed
  double mean_rolloff_hz = 0.0;       // kFromRolloff
  double lowpass_below = 0.6;         // lowpass branch when rolloff < this * Nyquist
  double lowpass_spread = 0.2;        // cutoff ~ U((1-s) mu, (1+s) mu)
  double min_cutoff_hz = 300.0;
  double max_cutoff_fraction = 0.95;  // of Nyquist
  double highpass_probability = 0.5;
  double highpass_min_hz = 50.0;
  double highpass_max_hz = 300.0;
};

/// Distributions from which plan entries are drawn.
struct PlanTemplate {
  std::vector<WeightedValue> sample_rates;
  std::vector<WeightedValue> bit_depths;
  double reverb_probability = 0.0;
  double snr_min_db = 0.0;
  double snr_max_db = 0.0;
  double lufs_mean = -23.0;
  double lufs_std = 0.0;
  FilterRule filter;
  std::optional<std::pair<double, double>> saturation_drive;
  /// Ignore the noise bank and always mix generated white noise.
  bool white_noise_only = false;
};

struct PlanOptions {
  double reverb_constant_db = 5.0;  // c_rev
  double reverb_epsilon_db = 1.0;   // floor on mean SNR in the denominator
};

/// p_rev = clip(c_rev / max(mean_snr_db, eps), 0, 1).
double reverb_probability(double mean_snr_db, const PlanOptions& options = {});

PlanTemplate template_from_profile(const profile::AcousticProfile& profile, const PlanOptions& options = {});

struct TelephonyOptions {
  bool eight_bit = false;
};

/// Fixed telephony-channel template: 8 kHz, 16-bit (or 8-bit), white noise at
/// U(15, 30) dB SNR, tanh saturation with drive U(1, 2), 300-3400 Hz bandpass.
PlanTemplate telephony_preset(const TelephonyOptions& options = {});

/// Draws one entry per manifest entry, in manifest order. Entry i uses the
/// seed derive_key(master_seed, i); every parameter comes from its own
/// counter-based stream so entries are reproducible in isolation.
/// Without RIRs reverb is disabled; without noises white noise is used.
std::vector<PlanEntry> sample_plan(const PlanTemplate& tmpl, const profile::CorpusManifest& sources,
                                   const AssetBank& bank, std::uint64_t master_seed);

std::vector<PlanEntry> sample_plan(const profile::AcousticProfile& profile, const profile::CorpusManifest& sources,
                                   const AssetBank& bank, std::uint64_t master_seed, const PlanOptions& options = {});

}  // namespace asrda::augment
