#include "asrda/augment/operators.hpp"

#include <cmath>
#include <string>

#include "asrda/audio/resample.hpp"
#include "asrda/dsp/biquad.hpp"
#include "asrda/dsp/fft.hpp"
#include "asrda/error.hpp"
#include "asrda/metrics/loudness.hpp"
#include "asrda/rng.hpp"

namespace asrda::augment {
namespace {

constexpr int kButterworthOrder = 4;

void require_mono(const audio::AudioBuffer& buf, const char* what) {
  require(buf.channels == 1, ErrorCode::kInvalidArgument, std::string(what) + " must be mono");
}

audio::AudioBuffer at_rate(const audio::AudioBuffer& buf, int rate) {
  return buf.sample_rate == rate ? buf : audio::resample(buf, rate);
}

}  // namespace

ReverbResult apply_reverb(const audio::AudioBuffer& buf, const audio::AudioBuffer& rir) {
  require_mono(buf, "reverb input");
  require_mono(rir, "impulse response");
  const audio::AudioBuffer h = at_rate(rir, buf.sample_rate);
  require(audio::peak_abs(h.samples) > 0.0, ErrorCode::kInvalidArgument, "impulse response is silent");

  ReverbResult out{buf, 1.0};
  std::vector<double> wet = dsp::convolve(buf.samples, h.samples);
  wet.resize(buf.samples.size());
  out.audio.samples = std::move(wet);
  out.peak_gain = audio::protect_peak(out.audio.samples, kPeakCeiling);
  return out;
}

audio::AudioBuffer white_noise(std::size_t frames, int sample_rate, std::uint64_t seed) {
  audio::AudioBuffer out;
  out.sample_rate = sample_rate;
  out.channels = 1;
  out.source_bit_depth = 32;
  out.source_format = audio::SampleFormat::kFloat;
  out.samples.resize(frames);
  CounterRng rng(derive_key(seed, 0x3417E));
  for (double& v : out.samples) v = rng.normal();
  return out;
}

NoiseMixResult mix_noise(const audio::AudioBuffer& buf, const audio::AudioBuffer& noise, double target_snr_db,
                         std::uint64_t seed) {
  require(std::isfinite(target_snr_db), ErrorCode::kInvalidArgument, "target SNR must be finite");
  require_mono(buf, "noise mix input");
  require_mono(noise, "noise");
  require(!buf.samples.empty() && audio::peak_abs(buf.samples) >= 1e-6, ErrorCode::kSilentInput,
          "cannot set an SNR against a silent signal");
  const audio::AudioBuffer n = at_rate(noise, buf.sample_rate);
  require(!n.samples.empty() && audio::peak_abs(n.samples) > 0.0, ErrorCode::kInvalidArgument, "noise is silent");

  const std::size_t len = buf.samples.size();
  const std::size_t nlen = n.samples.size();
  CounterRng rng(derive_key(seed, 0xC0FF));
  std::vector<double> segment(len);
  if (nlen >= len) {
    const auto offset = static_cast<std::size_t>(rng.below(nlen - len + 1));
    std::copy_n(n.samples.begin() + static_cast<std::ptrdiff_t>(offset), len, segment.begin());
  } else {
    const auto offset = static_cast<std::size_t>(rng.below(nlen));
    for (std::size_t i = 0; i < len; ++i) segment[i] = n.samples[(offset + i) % nlen];
  }

  const double px = audio::mean_power(buf.samples);
  const double pn = audio::mean_power(segment);
  require(pn > 0.0, ErrorCode::kInvalidArgument, "selected noise segment is silent");
  const double g = std::sqrt(px / (pn * std::pow(10.0, target_snr_db / 10.0)));

  NoiseMixResult out;
  out.audio = buf;
  double scaled_power = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double v = g * segment[i];
    scaled_power += v * v;
    out.audio.samples[i] += v;
  }
  scaled_power /= static_cast<double>(len);
  out.noise_gain = g;
  out.realized_snr_db = audio::power_ratio_db(px, scaled_power);
  out.peak_gain = audio::protect_peak(out.audio.samples, kPeakCeiling);
  return out;
}

LoudnessResult normalize_lufs(const audio::AudioBuffer& buf, double target_lufs) {
  return normalize_lufs(buf, target_lufs, metrics::measure_lufs(buf));
}

LoudnessResult normalize_lufs(const audio::AudioBuffer& buf, double target_lufs, double reference_lufs) {
  require(std::isfinite(target_lufs), ErrorCode::kInvalidArgument, "target loudness must be finite");
  require(std::isfinite(reference_lufs), ErrorCode::kInvalidArgument, "reference loudness must be finite");
  LoudnessResult out;
  out.audio = buf;
  out.measured_lufs = reference_lufs;
  out.requested_gain_db = target_lufs - out.measured_lufs;
  if (out.requested_gain_db == 0.0) return out;

  double g = audio::db_to_gain(out.requested_gain_db);
  const double peak = audio::peak_abs(buf.samples);
  if (peak * g > kPeakCeiling) g = kPeakCeiling / peak;
  for (double& v : out.audio.samples) v *= g;
  out.applied_gain_db = 20.0 * std::log10(g);
  out.shortfall_db = std::max(0.0, out.requested_gain_db - out.applied_gain_db);
  return out;
}

void validate_filter(const FilterSpec& spec, int sample_rate) {
  const double nyquist = 0.5 * sample_rate;
  auto in_band = [&](double f) { return f > 0.0 && f < nyquist; };
  switch (spec.kind) {
    case FilterKind::kNone:
      return;
    case FilterKind::kLowpass:
    case FilterKind::kHighpass:
      require(in_band(spec.cutoff_hz), ErrorCode::kInvalidArgument,
              "cutoff " + std::to_string(spec.cutoff_hz) + " Hz outside (0, Nyquist)");
      return;
    case FilterKind::kBandpass:
      require(in_band(spec.low_hz) && in_band(spec.high_hz), ErrorCode::kInvalidArgument,
              "bandpass edges outside (0, Nyquist)");
      require(spec.low_hz < spec.high_hz, ErrorCode::kInvalidArgument, "bandpass low edge must be below high edge");
      return;
  }
}

audio::AudioBuffer apply_filter(const audio::AudioBuffer& buf, const FilterSpec& spec) {
  validate_filter(spec, buf.sample_rate);
  if (spec.kind == FilterKind::kNone) return buf;

  dsp::BiquadCascade cascade;
  const double fs = buf.sample_rate;
  switch (spec.kind) {
    case FilterKind::kLowpass:
      cascade = dsp::butterworth_lowpass(kButterworthOrder, spec.cutoff_hz, fs);
      break;
    case FilterKind::kHighpass:
      cascade = dsp::butterworth_highpass(kButterworthOrder, spec.cutoff_hz, fs);
      break;
    case FilterKind::kBandpass:
      cascade = dsp::butterworth_highpass(kButterworthOrder, spec.low_hz, fs);
      cascade.append(dsp::butterworth_lowpass(kButterworthOrder, spec.high_hz, fs));
      break;
    case FilterKind::kNone:
      break;
  }

  audio::AudioBuffer out = buf;
  if (buf.channels == 1) {
    cascade.process(out.samples);
    return out;
  }
  const auto ch = static_cast<std::size_t>(buf.channels);
  for (int c = 0; c < buf.channels; ++c) {
    std::vector<double> plane = audio::extract_channel(buf, c);
    cascade.process(plane);
    for (std::size_t i = 0; i < plane.size(); ++i) out.samples[i * ch + static_cast<std::size_t>(c)] = plane[i];
  }
  return out;
}

audio::AudioBuffer saturate(const audio::AudioBuffer& buf, double drive) {
  require(drive > 0.0 && std::isfinite(drive), ErrorCode::kInvalidArgument, "saturation drive must be positive");
  audio::AudioBuffer out = buf;
  for (double& v : out.samples) v = std::tanh(drive * v);
  return out;
}

}  // namespace asrda::augment
