#include "asrda/metrics/descriptors.hpp"

#include "asrda/metrics/loudness.hpp"
#include "asrda/metrics/snr.hpp"
#include "asrda/metrics/spectral.hpp"

namespace asrda::metrics {

AcousticDescriptors analyze(const audio::AudioBuffer& buf) {
  const audio::AudioBuffer mono = audio::mixdown_mono(buf);
  const SpectralShape shape = spectral_shape(mono);
  return {estimate_snr(mono), measure_lufs(mono), shape.centroid_hz, shape.rolloff_hz};
}

}  // namespace asrda::metrics
