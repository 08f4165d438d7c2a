#pragma once

#include "asrda/audio/buffer.hpp"

namespace asrda::metrics {

struct SnrOptions {
  double window_s = 0.025;
  double hop_s = 0.010;
  double noise_fraction = 0.10;      // lowest-power fraction of frames taken as the noise floor
  double activity_margin_db = 6.0;   // frames this far above the floor count as signal
  double min_db = 0.0;
  double max_db = 60.0;
  double min_duration_s = 0.5;
};

/// Blind SNR estimate in dB from frame-power statistics.
///
/// Noise power is the mean of the lowest-decile frame powers; signal power is
/// the mean over frames more than `activity_margin_db` above it. When no
/// frame clears the margin the recording is stationary and frame statistics
/// cannot separate signal from noise; the estimate then falls back to the
/// long-term spectrum, treating the median bin power as the noise density
/// (a steady tone scores high, steady broadband noise scores near 0 dB).
///
/// Multichannel input is mixed down first. The result is clamped to
/// [min_db, max_db]. Throws SilentInput when the peak is below 1e-6 and
/// InvalidArgument when the buffer is shorter than min_duration_s.
double estimate_snr(const audio::AudioBuffer& buf, const SnrOptions& options = {});

}  // namespace asrda::metrics
