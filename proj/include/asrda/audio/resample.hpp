#pragma once

#include "asrda/audio/buffer.hpp"

namespace asrda::audio {

/// Quality knob for the polyphase resampler.
struct ResampleOptions {
  /// Kaiser design attenuation for the stop band, in dB.
  double stopband_db = 60.0;
  /// Start of the transition band as a fraction of the lower Nyquist
  /// frequency; the stop band begins at that Nyquist frequency.
  double passband_edge = 0.85;
};

/// Rational-ratio polyphase resampler with a Kaiser-windowed sinc kernel.
///
/// Output frame count is round(frames * target / source). The kernel is
/// zero-phase (no added delay). Each channel is processed independently.
/// Throws InvalidArgument for a non-positive target rate.
AudioBuffer resample(const AudioBuffer& buf, int target_rate, const ResampleOptions& options = {});

}  // namespace asrda::audio
