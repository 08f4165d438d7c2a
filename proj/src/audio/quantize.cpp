#include "asrda/audio/quantize.hpp"

#include <algorithm>
#include <cmath>

#include "asrda/error.hpp"
#include "asrda/rng.hpp"

namespace asrda::audio {

AudioBuffer requantize(const AudioBuffer& buf, int target_bits, bool dither, std::uint64_t seed) {
  require(target_bits == 8 || target_bits == 16 || target_bits == 24, ErrorCode::kInvalidArgument,
          "requantize supports 8, 16 or 24 bits");
  const double scale = std::ldexp(1.0, target_bits - 1);
  const double lsb = 1.0 / scale;
  const double top = (scale - 1.0) * lsb;

  AudioBuffer out = buf;
  out.source_bit_depth = target_bits;
  out.source_format = SampleFormat::kPcmInt;
  CounterRng rng(derive_key(seed, 0x7D17));
  for (double& s : out.samples) {
    double v = s;
    if (dither) v += (rng.uniform() + rng.uniform() - 1.0) * lsb;
    s = std::clamp(std::nearbyint(v * scale) * lsb, -1.0, top);
  }
  return out;
}

}  // namespace asrda::audio
