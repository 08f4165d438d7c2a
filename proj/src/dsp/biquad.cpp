#include "asrda/dsp/biquad.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "asrda/error.hpp"

namespace asrda::dsp {
namespace {

void check_cutoff(double cutoff_hz, double sample_rate) {
  require(sample_rate > 0.0, ErrorCode::kInvalidArgument, "sample rate must be positive");
  require(cutoff_hz > 0.0 && cutoff_hz < 0.5 * sample_rate, ErrorCode::kInvalidArgument,
          "cutoff " + std::to_string(cutoff_hz) + " Hz outside (0, Nyquist)");
}

std::vector<double> butterworth_qs(int order) {
  require(order >= 2 && order % 2 == 0, ErrorCode::kInvalidArgument, "Butterworth order must be even");
  std::vector<double> qs;
  for (int k = 0; k < order / 2; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + 1.0) / (2.0 * order);
    qs.push_back(1.0 / (2.0 * std::cos(theta)));
  }
  return qs;
}

}  // namespace

std::complex<double> Biquad::response(double freq_hz, double sample_rate) const {
  const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate;
  const std::complex<double> z1 = std::polar(1.0, -w);
  const std::complex<double> z2 = z1 * z1;
  return (b0 + b1 * z1 + b2 * z2) / (1.0 + a1 * z1 + a2 * z2);
}

void BiquadCascade::append(const BiquadCascade& other) {
  sections_.insert(sections_.end(), other.sections_.begin(), other.sections_.end());
}

void BiquadCascade::process(std::span<double> x) const {
  for (const Biquad& s : sections_) {
    double z1 = 0.0, z2 = 0.0;
    for (double& v : x) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
}

std::vector<double> BiquadCascade::filtered(std::span<const double> x) const {
  std::vector<double> y(x.begin(), x.end());
  process(y);
  return y;
}

double BiquadCascade::magnitude(double freq_hz, double sample_rate) const {
  std::complex<double> h = 1.0;
  for (const Biquad& s : sections_) h *= s.response(freq_hz, sample_rate);
  return std::abs(h);
}

Biquad lowpass_section(double cutoff_hz, double q, double sample_rate) {
  check_cutoff(cutoff_hz, sample_rate);
  const double w0 = 2.0 * std::numbers::pi * cutoff_hz / sample_rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double c = std::cos(w0);
  const double a0 = 1.0 + alpha;
  return {(1.0 - c) / 2.0 / a0, (1.0 - c) / a0, (1.0 - c) / 2.0 / a0, -2.0 * c / a0, (1.0 - alpha) / a0};
}

Biquad highpass_section(double cutoff_hz, double q, double sample_rate) {
  check_cutoff(cutoff_hz, sample_rate);
  const double w0 = 2.0 * std::numbers::pi * cutoff_hz / sample_rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double c = std::cos(w0);
  const double a0 = 1.0 + alpha;
  return {(1.0 + c) / 2.0 / a0, -(1.0 + c) / a0, (1.0 + c) / 2.0 / a0, -2.0 * c / a0, (1.0 - alpha) / a0};
}

BiquadCascade butterworth_lowpass(int order, double cutoff_hz, double sample_rate) {
  std::vector<Biquad> sections;
  for (double q : butterworth_qs(order)) sections.push_back(lowpass_section(cutoff_hz, q, sample_rate));
  return BiquadCascade(std::move(sections));
}

BiquadCascade butterworth_highpass(int order, double cutoff_hz, double sample_rate) {
  std::vector<Biquad> sections;
  for (double q : butterworth_qs(order)) sections.push_back(highpass_section(cutoff_hz, q, sample_rate));
  return BiquadCascade(std::move(sections));
}

}  // namespace asrda::dsp
