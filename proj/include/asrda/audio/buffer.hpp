#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace asrda::audio {

/// Sample formats a WAV payload may carry.
enum class SampleFormat { kPcmInt, kFloat };

/// Technical attributes of a decoded file.
struct TechnicalAttributes {
  int sample_rate = 0;
  int bit_depth = 0;
  int channel_count = 0;
  double duration = 0.0;  // seconds

  bool operator==(const TechnicalAttributes&) const = default;
};

/// Decoded PCM audio.
///
/// Layout: samples are interleaved (frame-major), so samples.size() is always
/// frames() * channels. Amplitudes are normalized doubles in [-1, 1];
/// source_bit_depth records the quantization the samples came from.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;
  int channels = 1;
  int source_bit_depth = 16;
  SampleFormat source_format = SampleFormat::kPcmInt;

  AudioBuffer() = default;
  AudioBuffer(std::vector<double> data, int rate, int channel_count = 1, int bit_depth = 16)
      : samples(std::move(data)), sample_rate(rate), channels(channel_count), source_bit_depth(bit_depth) {}

  std::size_t frames() const noexcept { return channels > 0 ? samples.size() / static_cast<std::size_t>(channels) : 0; }
  double duration() const noexcept { return sample_rate > 0 ? static_cast<double>(frames()) / sample_rate : 0.0; }
  bool empty() const noexcept { return samples.empty(); }

  TechnicalAttributes attributes() const noexcept {
    return {sample_rate, source_bit_depth, channels, duration()};
  }

  /// Throws InvalidArgument if the buffer violates its invariants.
  void validate() const;
};

/// Arithmetic mean across channels; mono input is returned unchanged.
AudioBuffer mixdown_mono(const AudioBuffer& buf);

/// Copies channel `ch` of an interleaved buffer into its own vector.
std::vector<double> extract_channel(const AudioBuffer& buf, int ch);

double peak_abs(std::span<const double> x) noexcept;
double mean_power(std::span<const double> x) noexcept;
double rms(std::span<const double> x) noexcept;

/// Scales in place so that the absolute peak does not exceed `ceiling`.
/// Returns the applied linear gain (1.0 when no scaling was needed).
double protect_peak(std::span<double> x, double ceiling = 0.999) noexcept;

inline double db_to_gain(double db) noexcept { return std::pow(10.0, db / 20.0); }
inline double power_ratio_db(double num, double den) noexcept { return 10.0 * std::log10(num / den); }

}  // namespace asrda::audio
