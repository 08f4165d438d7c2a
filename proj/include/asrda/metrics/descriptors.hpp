#pragma once

#include "asrda/audio/buffer.hpp"

namespace asrda::metrics {

struct AcousticDescriptors {
  double snr_db = 0.0;
  double lufs = 0.0;
  double spectral_centroid_hz = 0.0;
  double spectral_rolloff_hz = 0.0;

  bool operator==(const AcousticDescriptors&) const = default;
};

/// All four descriptors of one buffer (mixed down to mono).
AcousticDescriptors analyze(const audio::AudioBuffer& buf);

}  // namespace asrda::metrics
