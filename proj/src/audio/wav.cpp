#include "asrda/audio/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "asrda/error.hpp"

namespace asrda::audio {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t pos() const { return pos_; }

  void need(std::size_t n, const char* what) const {
    if (remaining() < n) fail(ErrorCode::kParseError, std::string("truncated ") + what);
  }

  std::uint32_t u32() {
    need(4, "field");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::uint16_t u16() {
    need(2, "field");
    const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }

  std::string tag() {
    need(4, "chunk tag");
    std::string t(reinterpret_cast<const char*>(bytes_.data() + pos_), 4);
    pos_ += 4;
    return t;
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    auto s = bytes_.subspan(pos_, std::min(n, remaining()));
    pos_ += s.size();
    return s;
  }

  void skip(std::size_t n) { pos_ += std::min(n, remaining()); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

FormatChunk parse_fmt(std::span<const std::uint8_t> body) {
  if (body.size() < 16) fail(ErrorCode::kParseError, "fmt chunk shorter than 16 bytes");
  ByteReader r(body);
  FormatChunk f;
  f.format = r.u16();
  f.channels = r.u16();
  f.sample_rate = r.u32();
  r.u32();  // byte rate
  f.block_align = r.u16();
  f.bits = r.u16();
  if (f.format == kFormatExtensible) {
    if (body.size() < 40) fail(ErrorCode::kParseError, "extensible fmt chunk too short");
    r.u16();  // cbSize
    r.u16();  // valid bits
    r.u32();  // channel mask
    f.format = r.u16();  // first two bytes of the subformat GUID
  }
  return f;
}

std::int32_t read_int(const std::uint8_t* p, int bytes) {
  std::uint32_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  const int shift = 32 - 8 * bytes;
  return static_cast<std::int32_t>(v << shift) >> shift;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

}  // namespace

std::int32_t quantize_sample(double x, int bit_depth) noexcept {
  const double scale = std::ldexp(1.0, bit_depth - 1);
  const double hi = scale - 1.0;
  const double v = std::clamp(std::nearbyint(x * scale), -scale, hi);
  return static_cast<std::int32_t>(v);
}

AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 12) fail(ErrorCode::kParseError, "file shorter than RIFF header");
  if (r.tag() != "RIFF") fail(ErrorCode::kParseError, "missing RIFF tag");
  r.u32();
  if (r.tag() != "WAVE") fail(ErrorCode::kParseError, "missing WAVE tag");

  FormatChunk fmt;
  bool have_fmt = false;
  std::span<const std::uint8_t> data;
  bool have_data = false;
  while (r.remaining() >= 8) {
    const std::string id = r.tag();
    const std::uint32_t size = r.u32();
    if (id == "fmt ") {
      if (r.remaining() < size) fail(ErrorCode::kParseError, "truncated fmt chunk");
      fmt = parse_fmt(r.take(size));
      have_fmt = true;
    } else if (id == "data") {
      // Tolerate writers that leave a placeholder size on the final chunk.
      data = r.take(size);
      have_data = true;
    } else {
      r.skip(size);
    }
    if (size % 2 == 1) r.skip(1);
    if (have_fmt && have_data) break;
  }
  if (!have_fmt) fail(ErrorCode::kParseError, "missing fmt chunk");
  if (!have_data) fail(ErrorCode::kParseError, "missing data chunk");
  if (fmt.channels == 0) fail(ErrorCode::kParseError, "zero channels");
  if (fmt.sample_rate == 0) fail(ErrorCode::kParseError, "zero sample rate");

  const bool is_float = fmt.format == kFormatFloat;
  if (fmt.format != kFormatPcm && !is_float) {
    fail(ErrorCode::kUnsupportedFormat, "codec tag " + std::to_string(fmt.format));
  }
  if (is_float && fmt.bits != 32) fail(ErrorCode::kUnsupportedFormat, "only 32-bit float is supported");
  if (!is_float && fmt.bits != 8 && fmt.bits != 16 && fmt.bits != 24 && fmt.bits != 32) {
    fail(ErrorCode::kUnsupportedFormat, std::to_string(fmt.bits) + "-bit PCM");
  }

  const int bytes_per_sample = fmt.bits / 8;
  const std::size_t frame_bytes = static_cast<std::size_t>(bytes_per_sample) * fmt.channels;
  const std::size_t frames = data.size() / frame_bytes;

  AudioBuffer out;
  out.sample_rate = static_cast<int>(fmt.sample_rate);
  out.channels = fmt.channels;
  out.source_bit_depth = fmt.bits;
  out.source_format = is_float ? SampleFormat::kFloat : SampleFormat::kPcmInt;
  out.samples.resize(frames * fmt.channels);

  const std::uint8_t* p = data.data();
  const double scale = std::ldexp(1.0, fmt.bits - 1);
  for (std::size_t i = 0; i < out.samples.size(); ++i, p += bytes_per_sample) {
    double v;
    if (is_float) {
      std::uint32_t bits = 0;
      for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(p[b]) << (8 * b);
      const float f = std::bit_cast<float>(bits);
      v = std::isfinite(f) ? std::clamp(static_cast<double>(f), -1.0, 1.0) : 0.0;
    } else if (fmt.bits == 8) {
      v = (static_cast<double>(*p) - 128.0) / 128.0;
    } else {
      v = static_cast<double>(read_int(p, bytes_per_sample)) / scale;
    }
    out.samples[i] = v;
  }
  return out;
}

std::vector<std::uint8_t> encode_wav(const AudioBuffer& buf, int bit_depth, SampleFormat format) {
  require(bit_depth == 8 || bit_depth == 16 || bit_depth == 24 || bit_depth == 32, ErrorCode::kInvalidArgument,
          "bit depth must be one of 8, 16, 24, 32");
  require(format == SampleFormat::kPcmInt || bit_depth == 32, ErrorCode::kInvalidArgument,
          "float output requires 32-bit depth");
  require(buf.channels >= 1 && buf.sample_rate > 0, ErrorCode::kInvalidArgument, "invalid buffer");

  const int bytes_per_sample = bit_depth / 8;
  const auto data_bytes = static_cast<std::uint32_t>(buf.samples.size() * static_cast<std::size_t>(bytes_per_sample));
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, format == SampleFormat::kFloat ? kFormatFloat : kFormatPcm);
  put_u16(out, static_cast<std::uint16_t>(buf.channels));
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate));
  const auto block_align = static_cast<std::uint16_t>(buf.channels * bytes_per_sample);
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate) * block_align);
  put_u16(out, block_align);
  put_u16(out, static_cast<std::uint16_t>(bit_depth));
  put_tag(out, "data");
  put_u32(out, data_bytes);

  for (double x : buf.samples) {
    if (format == SampleFormat::kFloat) {
      const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(std::clamp(x, -1.0, 1.0)));
      put_u32(out, bits);
    } else if (bit_depth == 8) {
      out.push_back(static_cast<std::uint8_t>(quantize_sample(x, 8) + 128));
    } else {
      const auto v = static_cast<std::uint32_t>(quantize_sample(x, bit_depth));
      for (int b = 0; b < bytes_per_sample; ++b) out.push_back(static_cast<std::uint8_t>((v >> (8 * b)) & 0xFF));
    }
  }
  return out;
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_wav(bytes);
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& buf, int bit_depth, SampleFormat format) {
  const auto bytes = encode_wav(buf, bit_depth, format);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace asrda::audio
