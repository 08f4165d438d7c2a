#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "asrda/audio/buffer.hpp"

namespace asrda::audio {

/// Decodes a RIFF/WAVE image. Supports integer PCM (8/16/24/32 bit),
/// 32-bit IEEE float and WAVE_FORMAT_EXTENSIBLE wrappers of either.
///
/// Integer samples are normalized by 2^(bits-1) (8-bit is unsigned with
/// offset 128); float samples are clamped to [-1, 1].
/// Throws ParseError for malformed containers, UnsupportedFormat for codecs
/// other than PCM/float.
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);

/// Encodes as little-endian WAV. bit_depth in {8, 16, 24, 32}; 32 writes
/// integer PCM unless format is kFloat.
std::vector<std::uint8_t> encode_wav(const AudioBuffer& buf, int bit_depth,
                                     SampleFormat format = SampleFormat::kPcmInt);

AudioBuffer read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const AudioBuffer& buf, int bit_depth,
               SampleFormat format = SampleFormat::kPcmInt);

/// Integer code for a normalized sample at the given depth (round-to-nearest, saturating).
std::int32_t quantize_sample(double x, int bit_depth) noexcept;

}  // namespace asrda::audio
