#pragma once

#include <cstdint>

#include "asrda/audio/buffer.hpp"

namespace asrda::audio {

/// Maps every sample to the nearest level of a `target_bits` integer grid
/// (levels k / 2^(bits-1), saturating at the top code). With `dither`, TPDF
/// noise spanning +/-1 LSB is added first; the dither sequence is a pure
/// function of `seed`. target_bits must be 8, 16 or 24.
AudioBuffer requantize(const AudioBuffer& buf, int target_bits, bool dither, std::uint64_t seed = 0);

/// Dither policy for depth changes: on when reducing depth, off otherwise.
constexpr bool default_dither(int source_bits, int target_bits) noexcept { return target_bits < source_bits; }

}  // namespace asrda::audio
