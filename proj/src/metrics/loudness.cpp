#include "asrda/metrics/loudness.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "asrda/error.hpp"

namespace asrda::metrics {
namespace {

// Analog prototype parameters of the K-weighting stages; at 48 kHz the
// bilinear redesign reproduces the tabulated BS.1770 coefficients.
constexpr double kShelfFreq = 1681.974450955533;
constexpr double kShelfGainDb = 3.999843853973347;
constexpr double kShelfQ = 0.7071752369554196;
constexpr double kShelfBandExponent = 0.4996667741545416;
constexpr double kHighpassFreq = 38.13547087602444;
constexpr double kHighpassQ = 0.5003270373238773;

constexpr double kLoudnessOffset = -0.691;
constexpr double kAbsoluteGate = -70.0;
constexpr double kRelativeGate = -10.0;
constexpr double kBlockSeconds = 0.4;
constexpr double kStepSeconds = 0.1;

double block_loudness(double mean_square) { return kLoudnessOffset + 10.0 * std::log10(mean_square); }

}  // namespace

dsp::BiquadCascade k_weighting(double sample_rate) {
  require(sample_rate > 2.0 * kShelfFreq, ErrorCode::kInvalidArgument,
          "sample rate too low for K-weighting");
  std::vector<dsp::Biquad> sections;

  {
    const double k = std::tan(std::numbers::pi * kShelfFreq / sample_rate);
    const double vh = std::pow(10.0, kShelfGainDb / 20.0);
    const double vb = std::pow(vh, kShelfBandExponent);
    const double a0 = 1.0 + k / kShelfQ + k * k;
    sections.push_back({(vh + vb * k / kShelfQ + k * k) / a0, 2.0 * (k * k - vh) / a0,
                        (vh - vb * k / kShelfQ + k * k) / a0, 2.0 * (k * k - 1.0) / a0,
                        (1.0 - k / kShelfQ + k * k) / a0});
  }
  {
    const double k = std::tan(std::numbers::pi * kHighpassFreq / sample_rate);
    const double a0 = 1.0 + k / kHighpassQ + k * k;
    sections.push_back({1.0, -2.0, 1.0, 2.0 * (k * k - 1.0) / a0, (1.0 - k / kHighpassQ + k * k) / a0});
  }
  return dsp::BiquadCascade(std::move(sections));
}

double measure_lufs(const audio::AudioBuffer& buf) {
  const audio::AudioBuffer mono = audio::mixdown_mono(buf);
  require(mono.sample_rate > 0, ErrorCode::kInvalidArgument, "sample rate must be positive");
  const auto block = static_cast<std::size_t>(std::lround(kBlockSeconds * mono.sample_rate));
  const auto step = static_cast<std::size_t>(std::lround(kStepSeconds * mono.sample_rate));
  require(mono.frames() >= block, ErrorCode::kInvalidArgument, "loudness needs at least one 400 ms block");

  const std::vector<double> weighted = k_weighting(mono.sample_rate).filtered(mono.samples);

  // Prefix sums of squares make each block O(1).
  std::vector<double> prefix(weighted.size() + 1, 0.0);
  for (std::size_t i = 0; i < weighted.size(); ++i) prefix[i + 1] = prefix[i] + weighted[i] * weighted[i];

  std::vector<double> blocks;
  for (std::size_t start = 0; start + block <= weighted.size(); start += step) {
    blocks.push_back((prefix[start + block] - prefix[start]) / static_cast<double>(block));
  }

  double sum = 0.0;
  std::size_t count = 0;
  for (double z : blocks) {
    if (z > 0.0 && block_loudness(z) > kAbsoluteGate) {
      sum += z;
      ++count;
    }
  }
  require(count > 0, ErrorCode::kSilentInput, "all loudness blocks fall below the absolute gate");

  const double relative_gate = block_loudness(sum / static_cast<double>(count)) + kRelativeGate;
  double gated_sum = 0.0;
  std::size_t gated_count = 0;
  for (double z : blocks) {
    if (z > 0.0) {
      const double l = block_loudness(z);
      if (l > kAbsoluteGate && l > relative_gate) {
        gated_sum += z;
        ++gated_count;
      }
    }
  }
  require(gated_count > 0, ErrorCode::kSilentInput, "all loudness blocks gated out");
  return block_loudness(gated_sum / static_cast<double>(gated_count));
}

}  // namespace asrda::metrics
