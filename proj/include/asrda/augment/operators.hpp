#pragma once

#include <cstddef>
#include <cstdint>

#include "asrda/audio/buffer.hpp"

namespace asrda::augment {

/// Linear peak ceiling shared by every stage.
inline constexpr double kPeakCeiling = 0.999;

enum class FilterKind { kNone, kLowpass, kHighpass, kBandpass };

struct FilterSpec {
  FilterKind kind = FilterKind::kNone;
  double cutoff_hz = 0.0;  // lowpass / highpass
  double low_hz = 0.0;     // bandpass
  double high_hz = 0.0;    // bandpass

  static FilterSpec none() { return {}; }
  static FilterSpec lowpass(double hz) { return {FilterKind::kLowpass, hz, 0.0, 0.0}; }
  static FilterSpec highpass(double hz) { return {FilterKind::kHighpass, hz, 0.0, 0.0}; }
  static FilterSpec bandpass(double low, double high) { return {FilterKind::kBandpass, 0.0, low, high}; }

  bool operator==(const FilterSpec&) const = default;
};

struct ReverbResult {
  audio::AudioBuffer audio;
  double peak_gain = 1.0;
};

/// x * h truncated to the input length, then peak-protected.
/// Both inputs must be mono; the RIR is resampled when its rate differs.
/// Throws InvalidArgument for a silent RIR.
ReverbResult apply_reverb(const audio::AudioBuffer& buf, const audio::AudioBuffer& rir);

struct NoiseMixResult {
  audio::AudioBuffer audio;
  double noise_gain = 0.0;       // g applied to the noise segment
  double realized_snr_db = 0.0;  // 10 log10(P_x / P_{g n}) from the two addends
  double peak_gain = 1.0;        // applied to the mixture after summation
};

/// x + g n with g = sqrt(P_x / (P_n 10^(snr/10))).
///
/// The noise is randomly cropped (when longer) or looped from a random offset
/// (when shorter) to the signal length; the offset is a pure function of
/// `seed`. Powers are means over the whole signal and the aligned noise
/// segment. Throws SilentInput for a silent signal and InvalidArgument for
/// silent noise or a non-finite target.
NoiseMixResult mix_noise(const audio::AudioBuffer& buf, const audio::AudioBuffer& noise, double target_snr_db,
                         std::uint64_t seed);

/// Unit-variance Gaussian noise from the counter-based generator.
audio::AudioBuffer white_noise(std::size_t frames, int sample_rate, std::uint64_t seed);

struct LoudnessResult {
  audio::AudioBuffer audio;
  double measured_lufs = 0.0;
  double requested_gain_db = 0.0;
  double applied_gain_db = 0.0;
  double shortfall_db = 0.0;  // requested - applied; > 0 only when peak protection engaged
};

/// Applies the gain that moves integrated loudness to `target_lufs`, limited
/// so that the peak stays at or below kPeakCeiling.
LoudnessResult normalize_lufs(const audio::AudioBuffer& buf, double target_lufs);

/// Same, but the gain is computed from `reference_lufs` instead of measuring
/// `buf`. The chain uses this to aim at the loudness after a later linear filter.
LoudnessResult normalize_lufs(const audio::AudioBuffer& buf, double target_lufs, double reference_lufs);

/// 4th-order Butterworth sections; bandpass is a highpass at low_hz followed
/// by a lowpass at high_hz. Throws InvalidArgument for cutoffs outside (0, Nyquist).
audio::AudioBuffer apply_filter(const audio::AudioBuffer& buf, const FilterSpec& spec);
void validate_filter(const FilterSpec& spec, int sample_rate);

/// Memoryless tanh(drive * x). drive must be positive.
audio::AudioBuffer saturate(const audio::AudioBuffer& buf, double drive);

}  // namespace asrda::augment
