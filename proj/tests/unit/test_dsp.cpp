#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "asrda/dsp/biquad.hpp"
#include "asrda/dsp/fft.hpp"
#include "asrda/error.hpp"
#include "test_support.hpp"

using namespace asrda;
using namespace asrda::dsp;
using Catch::Approx;

TEST_CASE("FFT matches a naive DFT", "[fft]") {
  const auto x = test::uniform(256, -1.0, 1.0, 1);
  RealFft fft(256);
  std::vector<std::complex<double>> out(fft.bins());
  fft.forward(x, out);
  const auto p = test::naive_power_spectrum(x);
  for (std::size_t k = 0; k < p.size(); ++k) REQUIRE(std::norm(out[k]) == Approx(p[k]).epsilon(1e-9).margin(1e-9));
}

TEST_CASE("convolution matches the direct sum", "[fft]") {
  for (std::size_t nb : {1u, 5u, 64u, 65u, 700u}) {
    const auto a = test::uniform(1000, -1.0, 1.0, 2);
    const auto b = test::uniform(nb, -1.0, 1.0, 3);
    const auto c = convolve(a, b);
    REQUIRE(c.size() == a.size() + b.size() - 1);
    for (std::size_t n = 0; n < c.size(); n += 37) {
      double ref = 0.0;
      for (std::size_t k = 0; k < b.size(); ++k) {
        if (n >= k && n - k < a.size()) ref += a[n - k] * b[k];
      }
      REQUIRE(c[n] == Approx(ref).margin(1e-9));
    }
  }
  REQUIRE(next_pow2(1) == 1);
  REQUIRE(next_pow2(1025) == 2048);
}

TEST_CASE("Butterworth response", "[biquad]") {
  for (double fs : {8000.0, 16000.0, 48000.0}) {
    const double fc = fs / 8;
    const auto lp = butterworth_lowpass(4, fc, fs);
    const auto hp = butterworth_highpass(4, fc, fs);
    REQUIRE(lp.sections().size() == 2);
    REQUIRE(20 * std::log10(lp.magnitude(fc, fs)) == Approx(-3.0103).margin(0.01));
    REQUIRE(20 * std::log10(hp.magnitude(fc, fs)) == Approx(-3.0103).margin(0.01));
    REQUIRE(lp.magnitude(0.0, fs) == Approx(1.0).margin(1e-9));
    REQUIRE(hp.magnitude(fs / 2 * 0.999, fs) == Approx(1.0).margin(1e-3));
    // Bilinear warping only deepens the stop band relative to the analog 24 dB/octave.
    REQUIRE(20 * std::log10(lp.magnitude(2 * fc, fs)) <= -24.0);
  }
  REQUIRE_THROWS_AS(butterworth_lowpass(4, 4000, 8000), Error);
  REQUIRE_THROWS_AS(butterworth_lowpass(3, 1000, 8000), Error);
  REQUIRE_THROWS_AS(butterworth_highpass(4, 0, 8000), Error);
}

TEST_CASE("cascade processing agrees with the analytic response", "[biquad]") {
  const double fs = 16000, f = 1500;
  const auto lp = butterworth_lowpass(4, 2000, fs);
  const auto x = test::sine(f, static_cast<int>(fs), 1.0);
  const auto y = lp.filtered(x);
  const std::span<const double> tail(y.data() + 4000, y.size() - 4000);
  REQUIRE(test::tone_amplitude(tail, f, fs) == Approx(lp.magnitude(f, fs)).epsilon(1e-3));
}
