#pragma once

#include "asrda/audio/buffer.hpp"
#include "asrda/dsp/biquad.hpp"

namespace asrda::metrics {

/// K-weighting pre-filter (high shelf followed by high-pass) redesigned for
/// `sample_rate` from its analog prototype via the bilinear transform.
dsp::BiquadCascade k_weighting(double sample_rate);

/// Integrated loudness in LUFS: K-weighting, 400 ms blocks with 75 % overlap,
/// absolute gate at -70 LUFS, relative gate 10 LU below the absolute-gated
/// level. Multichannel input is mixed down to mono first.
/// Throws InvalidArgument for input shorter than one block and SilentInput
/// when every block is gated out.
double measure_lufs(const audio::AudioBuffer& buf);

}  // namespace asrda::metrics
