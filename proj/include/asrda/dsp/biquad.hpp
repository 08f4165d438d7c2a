#pragma once

#include <complex>
#include <span>
#include <vector>

namespace asrda::dsp {

/// Second-order section, a0 normalized to 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;

  std::complex<double> response(double freq_hz, double sample_rate) const;
};

/// Cascade of second-order sections run in transposed direct form II from a zero state.
class BiquadCascade {
 public:
  BiquadCascade() = default;
  explicit BiquadCascade(std::vector<Biquad> sections) : sections_(std::move(sections)) {}

  void append(const BiquadCascade& other);
  void process(std::span<double> x) const;
  std::vector<double> filtered(std::span<const double> x) const;

  double magnitude(double freq_hz, double sample_rate) const;
  const std::vector<Biquad>& sections() const { return sections_; }

 private:
  std::vector<Biquad> sections_;
};

// RBJ-cookbook sections with bilinear pre-warping at the cutoff.
Biquad lowpass_section(double cutoff_hz, double q, double sample_rate);
Biquad highpass_section(double cutoff_hz, double q, double sample_rate);

/// Even-order Butterworth designs built from cascaded sections.
/// Throws InvalidArgument unless 0 < cutoff < Nyquist and order is even and >= 2.
BiquadCascade butterworth_lowpass(int order, double cutoff_hz, double sample_rate);
BiquadCascade butterworth_highpass(int order, double cutoff_hz, double sample_rate);

}  // namespace asrda::dsp
