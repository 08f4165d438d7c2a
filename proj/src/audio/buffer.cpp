#include "asrda/audio/buffer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asrda/error.hpp"

namespace asrda::audio {

void AudioBuffer::validate() const {
  require(sample_rate > 0, ErrorCode::kInvalidArgument, "sample rate must be positive");
  require(channels >= 1, ErrorCode::kInvalidArgument, "channel count must be >= 1");
  require(samples.size() % static_cast<std::size_t>(channels) == 0, ErrorCode::kInvalidArgument,
          "sample count not divisible by channel count");
  for (double s : samples) {
    require(std::isfinite(s), ErrorCode::kInvalidArgument, "non-finite sample");
  }
}

AudioBuffer mixdown_mono(const AudioBuffer& buf) {
  if (buf.channels == 1) return buf;
  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.channels = 1;
  out.source_bit_depth = buf.source_bit_depth;
  out.source_format = buf.source_format;
  const std::size_t n = buf.frames();
  const auto ch = static_cast<std::size_t>(buf.channels);
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < ch; ++c) acc += buf.samples[i * ch + c];
    out.samples[i] = acc / static_cast<double>(ch);
  }
  return out;
}

std::vector<double> extract_channel(const AudioBuffer& buf, int ch) {
  require(ch >= 0 && ch < buf.channels, ErrorCode::kInvalidArgument, "channel index out of range");
  const std::size_t n = buf.frames();
  const auto stride = static_cast<std::size_t>(buf.channels);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf.samples[i * stride + static_cast<std::size_t>(ch)];
  return out;
}

double peak_abs(std::span<const double> x) noexcept {
  double p = 0.0;
  for (double v : x) p = std::max(p, std::abs(v));
  return p;
}

double mean_power(std::span<const double> x) noexcept {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc / static_cast<double>(x.size());
}

double rms(std::span<const double> x) noexcept { return std::sqrt(mean_power(x)); }

double protect_peak(std::span<double> x, double ceiling) noexcept {
  const double peak = peak_abs(x);
  if (peak <= ceiling) return 1.0;
  const double g = ceiling / peak;
  for (double& v : x) v *= g;
  return g;
}

}  // namespace asrda::audio
