#include "asrda/metrics/snr.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "asrda/dsp/fft.hpp"
#include "asrda/error.hpp"

namespace asrda::metrics {
namespace {

constexpr std::size_t kSpectrumSize = 2048;

// Welch-averaged power spectrum; returns per-bin power excluding DC.
std::vector<double> long_term_spectrum(const std::vector<double>& x) {
  const std::size_t size = kSpectrumSize;
  std::vector<double> window(size);
  for (std::size_t i = 0; i < size; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(size));
  }
  dsp::RealFft fft(size);
  std::vector<std::complex<double>> spec(fft.bins());
  std::vector<double> psd(fft.bins() - 1, 0.0);
  std::vector<double> frame(size);
  const std::size_t hop = size / 2;
  const std::size_t last_start = x.size() > size ? x.size() - size : 0;
  for (std::size_t start = 0; start <= last_start; start += hop) {
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t j = start + i;
      frame[i] = (j < x.size() ? x[j] : 0.0) * window[i];
    }
    fft.forward(frame, spec);
    for (std::size_t k = 1; k < fft.bins(); ++k) psd[k - 1] += std::norm(spec[k]);
  }
  return psd;
}

double stationary_snr_db(const std::vector<double>& x, const SnrOptions& options) {
  std::vector<double> psd = long_term_spectrum(x);
  const double total = [&] {
    double t = 0.0;
    for (double p : psd) t += p;
    return t;
  }();
  auto mid = psd.begin() + static_cast<std::ptrdiff_t>(psd.size() / 2);
  std::nth_element(psd.begin(), mid, psd.end());
  const double noise = *mid * static_cast<double>(psd.size());
  if (noise <= 0.0) return options.max_db;
  const double signal = total - noise;
  if (signal <= 0.0) return options.min_db;
  return 10.0 * std::log10(signal / noise);
}

}  // namespace

double estimate_snr(const audio::AudioBuffer& buf, const SnrOptions& options) {
  const audio::AudioBuffer mono = audio::mixdown_mono(buf);
  require(mono.sample_rate > 0, ErrorCode::kInvalidArgument, "sample rate must be positive");
  require(mono.duration() >= options.min_duration_s, ErrorCode::kInvalidArgument,
          "SNR estimation needs at least 0.5 s of audio");
  const auto& x = mono.samples;
  require(audio::peak_abs(x) >= 1e-6, ErrorCode::kSilentInput, "signal peak below 1e-6");

  const auto window = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(options.window_s * mono.sample_rate)));
  const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(options.hop_s * mono.sample_rate)));
  std::vector<double> powers;
  for (std::size_t start = 0; start + window <= x.size(); start += hop) {
    powers.push_back(audio::mean_power(std::span(x).subspan(start, window)));
  }
  std::sort(powers.begin(), powers.end());
  const auto floor_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(options.noise_fraction * static_cast<double>(powers.size()))));
  double noise = 0.0;
  for (std::size_t i = 0; i < floor_count; ++i) noise += powers[i];
  noise /= static_cast<double>(floor_count);

  double snr;
  if (noise <= 0.0) {
    snr = options.max_db;
  } else {
    const double threshold = noise * std::pow(10.0, options.activity_margin_db / 10.0);
    double active = 0.0;
    std::size_t active_count = 0;
    for (double p : powers) {
      if (p > threshold) {
        active += p;
        ++active_count;
      }
    }
    snr = active_count > 0 ? 10.0 * std::log10(active / static_cast<double>(active_count) / noise)
                           : stationary_snr_db(x, options);
  }
  return std::clamp(snr, options.min_db, options.max_db);
}

}  // namespace asrda::metrics
