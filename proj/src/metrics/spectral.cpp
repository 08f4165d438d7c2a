#include "asrda/metrics/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "asrda/dsp/fft.hpp"
#include "asrda/error.hpp"

namespace asrda::metrics {
namespace {

struct Accumulator {
  double centroid_sum = 0.0;
  double rolloff_sum = 0.0;
  std::size_t frames = 0;
};

Accumulator analyze_frames(const audio::AudioBuffer& buf, double threshold, const SpectralOptions& options) {
  require(threshold > 0.0 && threshold < 1.0, ErrorCode::kInvalidArgument, "rolloff threshold must be in (0, 1)");
  require(options.frame_size >= 2 && options.hop >= 1, ErrorCode::kInvalidArgument, "invalid STFT geometry");
  const audio::AudioBuffer mono = audio::mixdown_mono(buf);
  require(mono.sample_rate > 0, ErrorCode::kInvalidArgument, "sample rate must be positive");
  const auto& x = mono.samples;
  require(!x.empty() && audio::peak_abs(x) >= 1e-6, ErrorCode::kSilentInput, "signal is silent");

  const std::size_t n = options.frame_size;
  std::vector<double> window(n);
  for (std::size_t i = 0; i < n; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
  }
  dsp::RealFft fft(n);
  std::vector<std::complex<double>> spec(fft.bins());
  std::vector<double> frame(n);
  const double bin_hz = static_cast<double>(mono.sample_rate) / static_cast<double>(n);

  Accumulator acc;
  // A signal shorter than one frame is analyzed as a single zero-padded frame.
  const std::size_t last_start = x.size() >= n ? x.size() - n : 0;
  for (std::size_t start = 0; start <= last_start; start += options.hop) {
    const std::size_t len = std::min(n, x.size() - start);
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = i < len ? x[start + i] : 0.0;
      energy += v * v;
      frame[i] = v * window[i];
    }
    if (std::sqrt(energy / static_cast<double>(len)) <= options.min_frame_rms) continue;
    fft.forward(frame, spec);

    double mag_sum = 0.0, weighted = 0.0, power_total = 0.0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const double m = std::abs(spec[k]);
      mag_sum += m;
      weighted += m * static_cast<double>(k) * bin_hz;
      power_total += m * m;
    }
    if (mag_sum <= 0.0) continue;
    const double target = threshold * power_total;
    double cumulative = 0.0;
    std::size_t rolloff_bin = spec.size() - 1;
    for (std::size_t k = 0; k < spec.size(); ++k) {
      cumulative += std::norm(spec[k]);
      if (cumulative >= target) {
        rolloff_bin = k;
        break;
      }
    }
    acc.centroid_sum += weighted / mag_sum;
    acc.rolloff_sum += static_cast<double>(rolloff_bin) * bin_hz;
    ++acc.frames;
  }
  require(acc.frames > 0, ErrorCode::kSilentInput, "no frame exceeds the energy threshold");
  return acc;
}

}  // namespace

double spectral_centroid(const audio::AudioBuffer& buf, const SpectralOptions& options) {
  return spectral_shape(buf, 0.85, options).centroid_hz;
}

double spectral_rolloff(const audio::AudioBuffer& buf, double threshold, const SpectralOptions& options) {
  return spectral_shape(buf, threshold, options).rolloff_hz;
}

SpectralShape spectral_shape(const audio::AudioBuffer& buf, double rolloff_threshold, const SpectralOptions& options) {
  const Accumulator acc = analyze_frames(buf, rolloff_threshold, options);
  const auto n = static_cast<double>(acc.frames);
  return {acc.centroid_sum / n, acc.rolloff_sum / n};
}

}  // namespace asrda::metrics
