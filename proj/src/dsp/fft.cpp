#include "asrda/dsp/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "asrda/error.hpp"

namespace asrda::dsp {
namespace {

// FFTW's planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr std::size_t kDirectConvolutionLimit = 64;

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

RealFft::RealFft(std::size_t size) : size_(size) {
  require(size >= 2, ErrorCode::kInvalidArgument, "FFT size must be >= 2");
  std::lock_guard lock(planner_mutex());
  in_ = fftw_alloc_real(size_);
  out_ = fftw_alloc_complex(bins());
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(size_), in_, static_cast<fftw_complex*>(out_), FFTW_ESTIMATE);
  if (!plan_) fail(ErrorCode::kInvalidArgument, "FFTW planning failed");
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  if (plan_) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

void RealFft::forward(std::span<const double> input, std::span<std::complex<double>> output) {
  require(output.size() >= bins(), ErrorCode::kInvalidArgument, "FFT output span too small");
  const std::size_t n = std::min(input.size(), size_);
  std::copy_n(input.begin(), n, in_);
  std::fill(in_ + n, in_ + size_, 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_));
  const auto* c = static_cast<const fftw_complex*>(out_);
  for (std::size_t k = 0; k < bins(); ++k) output[k] = {c[k][0], c[k][1]};
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size() + b.size() - 1;
  std::vector<double> out(n, 0.0);
  if (std::min(a.size(), b.size()) <= kDirectConvolutionLimit) {
    const auto& longer = a.size() >= b.size() ? a : b;
    const auto& shorter = a.size() >= b.size() ? b : a;
    for (std::size_t j = 0; j < shorter.size(); ++j) {
      const double h = shorter[j];
      if (h == 0.0) continue;
      for (std::size_t i = 0; i < longer.size(); ++i) out[i + j] += h * longer[i];
    }
    return out;
  }

  const std::size_t size = next_pow2(n);
  const std::size_t bins = size / 2 + 1;
  double* real = nullptr;
  fftw_complex* fa = nullptr;
  fftw_complex* fb = nullptr;
  fftw_plan pa, pb, inv;
  {
    std::lock_guard lock(planner_mutex());
    real = fftw_alloc_real(size);
    fa = fftw_alloc_complex(bins);
    fb = fftw_alloc_complex(bins);
    pa = fftw_plan_dft_r2c_1d(static_cast<int>(size), real, fa, FFTW_ESTIMATE);
    pb = fftw_plan_dft_r2c_1d(static_cast<int>(size), real, fb, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(size), fa, real, FFTW_ESTIMATE);
  }
  std::fill(real, real + size, 0.0);
  std::copy(a.begin(), a.end(), real);
  fftw_execute(pa);
  std::fill(real, real + size, 0.0);
  std::copy(b.begin(), b.end(), real);
  fftw_execute(pb);
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = fa[k][0] * fb[k][0] - fa[k][1] * fb[k][1];
    const double im = fa[k][0] * fb[k][1] + fa[k][1] * fb[k][0];
    fa[k][0] = re;
    fa[k][1] = im;
  }
  fftw_execute(inv);
  const double scale = 1.0 / static_cast<double>(size);
  for (std::size_t i = 0; i < n; ++i) out[i] = real[i] * scale;
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(fa);
    fftw_free(fb);
  }
  return out;
}

}  // namespace asrda::dsp
