#pragma once

#include <cstddef>

#include "asrda/audio/buffer.hpp"

namespace asrda::metrics {

struct SpectralOptions {
  std::size_t frame_size = 2048;
  std::size_t hop = 512;
  double min_frame_rms = 1e-5;  // quieter frames are excluded from the average
};

struct SpectralShape {
  double centroid_hz = 0.0;
  double rolloff_hz = 0.0;
};

/// Mean over energetic frames of sum(f_k |X_k|) / sum(|X_k|) on a Hann-windowed STFT.
double spectral_centroid(const audio::AudioBuffer& buf, const SpectralOptions& options = {});

/// Mean over energetic frames of the lowest bin frequency whose cumulative
/// power reaches `threshold` of the frame total. threshold must lie in (0, 1).
double spectral_rolloff(const audio::AudioBuffer& buf, double threshold = 0.85, const SpectralOptions& options = {});

/// Both descriptors from a single STFT pass.
SpectralShape spectral_shape(const audio::AudioBuffer& buf, double rolloff_threshold = 0.85,
                             const SpectralOptions& options = {});

}  // namespace asrda::metrics
