#include "asrda/audio/resample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <numbers>
#include <vector>

#include "asrda/error.hpp"

namespace asrda::audio {
namespace {

constexpr std::size_t kMaxTableEntries = 1u << 22;

double kaiser_beta(double attenuation_db) {
  if (attenuation_db > 50.0) return 0.1102 * (attenuation_db - 8.7);
  if (attenuation_db >= 21.0) {
    return 0.5842 * std::pow(attenuation_db - 21.0, 0.4) + 0.07886 * (attenuation_db - 21.0);
  }
  return 0.0;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Windowed-sinc kernel evaluated at a continuous offset measured in input samples.
class Kernel {
 public:
  Kernel(double cutoff_over_input_rate, double half_width, double beta)
      : scale_(2.0 * cutoff_over_input_rate),
        half_width_(half_width),
        beta_(beta),
        norm_(1.0 / std::cyl_bessel_i(0.0, beta)) {}

  double operator()(double tau) const {
    const double u = tau / half_width_;
    if (std::abs(u) >= 1.0) return 0.0;
    const double w = std::cyl_bessel_i(0.0, beta_ * std::sqrt(1.0 - u * u)) * norm_;
    return scale_ * sinc(scale_ * tau) * w;
  }

  double half_width() const { return half_width_; }

 private:
  double scale_;
  double half_width_;
  double beta_;
  double norm_;
};

}  // namespace

AudioBuffer resample(const AudioBuffer& buf, int target_rate, const ResampleOptions& options) {
  require(target_rate > 0, ErrorCode::kInvalidArgument, "target rate must be positive");
  require(buf.sample_rate > 0, ErrorCode::kInvalidArgument, "source rate must be positive");
  require(options.passband_edge > 0.0 && options.passband_edge < 1.0, ErrorCode::kInvalidArgument,
          "passband edge must be in (0, 1)");
  if (target_rate == buf.sample_rate) return buf;

  const auto g = std::gcd(buf.sample_rate, target_rate);
  const std::int64_t up = target_rate / g;    // L
  const std::int64_t down = buf.sample_rate / g;  // M
  const auto in_frames = static_cast<std::int64_t>(buf.frames());
  const std::int64_t out_frames = (2 * in_frames * up + down) / (2 * down);

  const double in_rate = buf.sample_rate;
  const double nyquist = 0.5 * std::min(in_rate, static_cast<double>(target_rate));
  const double transition = (1.0 - options.passband_edge) * nyquist;
  const double cutoff = 0.5 * (1.0 + options.passband_edge) * nyquist;
  const double attenuation = std::max(options.stopband_db, 21.0);
  // Kaiser length estimate, expressed as a half-width in input samples.
  const double half_width = (attenuation - 7.95) * in_rate / (2.0 * 14.357 * transition) + 1.0;
  const Kernel kernel(cutoff / in_rate, half_width, kaiser_beta(attenuation));

  const auto reach = static_cast<std::int64_t>(std::ceil(half_width));
  const std::int64_t taps = 2 * reach + 1;

  // Polyphase table: phase p holds kernel(p/L + reach - i) for tap i, which
  // multiplies x[base - reach + i] where base = floor(n*M/L).
  std::vector<double> table;
  const bool tabulate = static_cast<std::size_t>(up * taps) <= kMaxTableEntries;
  if (tabulate) {
    table.resize(static_cast<std::size_t>(up * taps));
    for (std::int64_t p = 0; p < up; ++p) {
      const double frac = static_cast<double>(p) / static_cast<double>(up);
      for (std::int64_t i = 0; i < taps; ++i) {
        table[static_cast<std::size_t>(p * taps + i)] = kernel(frac + static_cast<double>(reach - i));
      }
    }
  }

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.channels = buf.channels;
  out.source_bit_depth = buf.source_bit_depth;
  out.source_format = buf.source_format;
  out.samples.assign(static_cast<std::size_t>(out_frames * buf.channels), 0.0);

  const auto ch = static_cast<std::int64_t>(buf.channels);
  std::vector<double> coeffs(static_cast<std::size_t>(taps));
  for (std::int64_t n = 0; n < out_frames; ++n) {
    const std::int64_t pos = n * down;
    const std::int64_t base = pos / up;
    const std::int64_t phase = pos % up;
    const double* c;
    if (tabulate) {
      c = table.data() + phase * taps;
    } else {
      const double frac = static_cast<double>(phase) / static_cast<double>(up);
      for (std::int64_t i = 0; i < taps; ++i) coeffs[static_cast<std::size_t>(i)] = kernel(frac + static_cast<double>(reach - i));
      c = coeffs.data();
    }
    const std::int64_t first = base - reach;
    const std::int64_t lo = std::max<std::int64_t>(0, -first);
    const std::int64_t hi = std::min<std::int64_t>(taps, in_frames - first);
    for (std::int64_t k = 0; k < ch; ++k) {
      double acc = 0.0;
      for (std::int64_t i = lo; i < hi; ++i) acc += c[i] * buf.samples[static_cast<std::size_t>((first + i) * ch + k)];
      out.samples[static_cast<std::size_t>(n * ch + k)] = acc;
    }
  }
  return out;
}

}  // namespace asrda::audio
