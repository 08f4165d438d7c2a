#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace asrda::dsp {

/// Real-to-complex FFT of a fixed size (FFTW backed).
///
/// Each instance owns its plan and workspace, so an instance must not be shared
/// between threads; separate instances are safe to use concurrently.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }
  std::size_t bins() const { return size_ / 2 + 1; }

  /// Transforms `input` (zero-padded or truncated to size()) into bins() complex values.
  void forward(std::span<const double> input, std::span<std::complex<double>> output);

 private:
  std::size_t size_;
  double* in_ = nullptr;
  void* out_ = nullptr;
  void* plan_ = nullptr;
};

/// Full linear convolution (length a.size() + b.size() - 1).
/// Short kernels use the direct sum; long ones go through the FFT.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

std::size_t next_pow2(std::size_t n);

}  // namespace asrda::dsp
