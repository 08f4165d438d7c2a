#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "asrda/audio/buffer.hpp"
#include "asrda/audio/quantize.hpp"
#include "asrda/audio/resample.hpp"
#include "asrda/audio/wav.hpp"
#include "asrda/error.hpp"
#include "test_support.hpp"

using namespace asrda;
using namespace asrda::audio;
using Catch::Approx;

namespace {

void put_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
  v.push_back(x & 0xFF);
  v.push_back(x >> 8);
}
void put_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) v.push_back((x >> (8 * i)) & 0xFF);
}
void put_tag(std::vector<std::uint8_t>& v, const char* tag) { v.insert(v.end(), tag, tag + 4); }

// Hand-built 16-bit PCM file, independent of encode_wav.
std::vector<std::uint8_t> pcm16_file(const std::vector<std::int16_t>& samples, int rate, int channels,
                                     bool extra_chunk = false) {
  std::vector<std::uint8_t> v;
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  put_tag(v, "RIFF");
  put_u32(v, 36 + data_bytes + (extra_chunk ? 14 : 0));
  put_tag(v, "WAVE");
  put_tag(v, "fmt ");
  put_u32(v, 16);
  put_u16(v, 1);
  put_u16(v, static_cast<std::uint16_t>(channels));
  put_u32(v, static_cast<std::uint32_t>(rate));
  put_u32(v, static_cast<std::uint32_t>(rate * channels * 2));
  put_u16(v, static_cast<std::uint16_t>(channels * 2));
  put_u16(v, 16);
  if (extra_chunk) {
    put_tag(v, "LIST");
    put_u32(v, 5);
    v.insert(v.end(), {'a', 'b', 'c', 'd', 'e', 0});  // odd size plus pad byte
  }
  put_tag(v, "data");
  put_u32(v, data_bytes);
  for (auto s : samples) put_u16(v, static_cast<std::uint16_t>(s));
  return v;
}

}  // namespace

TEST_CASE("decode normalizes 16-bit PCM by 2^15", "[wav]") {
  const auto bytes = pcm16_file(std::vector<std::int16_t>(100, 16384), 16000, 1);
  const auto buf = decode_wav(bytes);
  REQUIRE(buf.frames() == 100);
  REQUIRE(buf.sample_rate == 16000);
  REQUIRE(buf.source_bit_depth == 16);
  for (double s : buf.samples) REQUIRE(s == 0.5);
}

TEST_CASE("decode skips unknown chunks and reports duration", "[wav]") {
  const auto bytes = pcm16_file(std::vector<std::int16_t>(16000 * 2, -32768), 16000, 2, true);
  const auto buf = decode_wav(bytes);
  REQUIRE(buf.channels == 2);
  REQUIRE(buf.frames() == 16000);
  REQUIRE(buf.duration() == 1.0);
  REQUIRE(buf.attributes() == TechnicalAttributes{16000, 16, 2, 1.0});
  REQUIRE(buf.samples.front() == -1.0);
}

TEST_CASE("decode rejects malformed and unsupported input", "[wav]") {
  auto bytes = pcm16_file(std::vector<std::int16_t>(10, 0), 8000, 1);
  SECTION("truncated header") {
    const std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + 20);
    REQUIRE_THROWS_MATCHES(decode_wav(cut), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == ErrorCode::kParseError;
                           }));
  }
  SECTION("not RIFF") {
    bytes[0] = 'X';
    REQUIRE_THROWS_AS(decode_wav(bytes), Error);
  }
  SECTION("compressed codec") {
    bytes[20] = 2;  // ADPCM
    try {
      decode_wav(bytes);
      FAIL("expected UnsupportedFormat");
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::kUnsupportedFormat);
    }
  }
}

TEST_CASE("encode/decode round trip stays within one LSB", "[wav][property]") {
  const auto noise = test::uniform(4000, -1.0, 1.0, 11);
  for (int bits : {8, 16, 24, 32}) {
    AudioBuffer buf(noise, 22050, 2, bits);
    const auto back = decode_wav(encode_wav(buf, bits));
    REQUIRE(back.source_bit_depth == bits);
    REQUIRE(back.channels == 2);
    const double lsb = std::ldexp(1.0, -(bits - 1));
    double worst = 0.0;
    for (std::size_t i = 0; i < noise.size(); ++i) worst = std::max(worst, std::abs(back.samples[i] - noise[i]));
    INFO("bits " << bits);
    REQUIRE(worst <= lsb);
  }
  SECTION("float") {
    AudioBuffer buf(noise, 44100);
    const auto back = decode_wav(encode_wav(buf, 32, SampleFormat::kFloat));
    REQUIRE(back.source_format == SampleFormat::kFloat);
    for (std::size_t i = 0; i < noise.size(); ++i) REQUIRE(back.samples[i] == Approx(noise[i]).margin(1e-7));
  }
}

TEST_CASE("silence encodes to an all-zero payload", "[wav]") {
  AudioBuffer buf(std::vector<double>(64, 0.0), 8000);
  for (int bits : {16, 24, 32}) {
    const auto bytes = encode_wav(buf, bits);
    const std::size_t payload = 64 * bits / 8;
    REQUIRE(std::all_of(bytes.end() - static_cast<std::ptrdiff_t>(payload), bytes.end(),
                        [](std::uint8_t b) { return b == 0; }));
  }
  const auto bytes8 = encode_wav(buf, 8);
  REQUIRE(std::all_of(bytes8.end() - 64, bytes8.end(), [](std::uint8_t b) { return b == 128; }));
}

TEST_CASE("write_wav/read_wav through the filesystem", "[wav]") {
  test::TempDir dir;
  const AudioBuffer buf(test::sine(440, 16000, 0.1, 0.5), 16000);
  write_wav(dir / "nested/a.wav", buf, 16);
  const auto back = read_wav(dir / "nested/a.wav");
  REQUIRE(back.frames() == buf.frames());
  REQUIRE_THROWS_AS(read_wav(dir / "missing.wav"), Error);
}

TEST_CASE("mixdown averages channels", "[buffer]") {
  const auto x = test::uniform(100, -0.5, 0.5, 3);
  AudioBuffer mono(x, 8000);
  REQUIRE(mixdown_mono(mono).samples == x);

  std::vector<double> same, opposite;
  for (double v : x) {
    same.insert(same.end(), {v, v});
    opposite.insert(opposite.end(), {v, -v});
  }
  REQUIRE(mixdown_mono(AudioBuffer(same, 8000, 2)).samples == x);
  for (double v : mixdown_mono(AudioBuffer(opposite, 8000, 2)).samples) REQUIRE(v == 0.0);
}

TEST_CASE("resample identity and argument checks", "[resample]") {
  const AudioBuffer buf(test::uniform(1000, -0.5, 0.5, 5), 16000);
  REQUIRE(resample(buf, 16000).samples == buf.samples);
  REQUIRE_THROWS_AS(resample(buf, 0), Error);
  REQUIRE_THROWS_AS(resample(buf, -8000), Error);
}

TEST_CASE("resample frame count is round(frames * target / source)", "[resample]") {
  for (std::size_t frames : {1u, 7u, 1000u, 44101u}) {
    const AudioBuffer buf(std::vector<double>(frames, 0.1), 44100);
    for (int target : {8000, 16000, 22050, 48000}) {
      const auto out = resample(buf, target);
      REQUIRE(out.sample_rate == target);
      REQUIRE(out.frames() == static_cast<std::size_t>(std::llround(frames * double(target) / 44100.0)));
    }
  }
}

TEST_CASE("resample preserves in-band tones", "[resample]") {
  struct Case {
    int from, to;
    double freq;
  };
  for (const auto& c : {Case{48000, 16000, 1000}, Case{16000, 48000, 2500}, Case{44100, 16000, 3000},
                        Case{8000, 22050, 1500}, Case{48000, 8000, 1200}}) {
    const AudioBuffer buf(test::sine(c.freq, c.from, 1.0, 0.8), c.from);
    const auto out = resample(buf, c.to);
    // Skip edges so the steady-state response is measured.
    const std::size_t edge = out.frames() / 10;
    std::span<const double> mid(out.samples.data() + edge, out.frames() - 2 * edge);
    const double amp = test::tone_amplitude(mid, c.freq, c.to);
    INFO(c.from << " -> " << c.to << " @ " << c.freq);
    REQUIRE(std::abs(test::db(amp / 0.8)) <= 0.5);
    // Dominant bin of the naive spectrum within one bin of the tone.
    const std::vector<double> head(mid.begin(), mid.begin() + 1024);
    const auto p = test::naive_power_spectrum(head);
    const auto k = std::distance(p.begin(), std::max_element(p.begin(), p.end()));
    REQUIRE(std::abs(k * double(c.to) / 1024 - c.freq) <= double(c.to) / 1024);
  }
}

TEST_CASE("resample attenuates out-of-band tones by at least 60 dB", "[resample]") {
  struct Case {
    int from, to;
    double freq;
  };
  for (const auto& c : {Case{48000, 8000, 6000}, Case{48000, 16000, 9000}, Case{44100, 16000, 12000},
                        Case{16000, 8000, 5000}}) {
    const AudioBuffer buf(test::sine(c.freq, c.from, 1.0), c.from);
    const auto out = resample(buf, c.to);
    const std::size_t edge = out.frames() / 10;
    std::span<const double> mid(out.samples.data() + edge, out.frames() - 2 * edge);
    const double ratio_db = 10.0 * std::log10(test::power(mid) / 0.5);
    INFO(c.from << " -> " << c.to << " @ " << c.freq << ": " << ratio_db << " dB");
    REQUIRE(ratio_db <= -60.0);
  }
}

TEST_CASE("resample is linear", "[resample][property]") {
  const auto x = test::uniform(3000, -0.4, 0.4, 8);
  const auto y = test::gaussian(3000, 0.1, 9);
  const double a = 0.7, b = -1.3;
  std::vector<double> mix(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mix[i] = a * x[i] + b * y[i];
  for (int target : {8000, 22050}) {
    const auto rx = resample(AudioBuffer(x, 16000), target).samples;
    const auto ry = resample(AudioBuffer(y, 16000), target).samples;
    const auto rm = resample(AudioBuffer(mix, 16000), target).samples;
    std::vector<double> diff(rm.size());
    for (std::size_t i = 0; i < rm.size(); ++i) diff[i] = rm[i] - (a * rx[i] + b * ry[i]);
    REQUIRE(std::sqrt(test::power(diff)) <= 1e-6);
  }
}

TEST_CASE("requantize grid, idempotence and dither", "[quantize]") {
  const AudioBuffer buf(test::uniform(2000, -1.0, 1.0, 21), 16000);
  const auto q16 = requantize(buf, 16, false);
  REQUIRE(q16.source_bit_depth == 16);
  for (double v : q16.samples) REQUIRE(v * 32768.0 == std::round(v * 32768.0));
  REQUIRE(requantize(q16, 16, false).samples == q16.samples);

  SECTION("unsupported depth") {
    REQUIRE_THROWS_AS(requantize(buf, 12, false), Error);
    REQUIRE_THROWS_AS(requantize(buf, 32, false), Error);
  }

  SECTION("8-bit quantization noise of a full-scale sine") {
    // 6.02 * 8 + 1.76 dB for uniformly distributed quantization error.
    const auto x = test::sine(997, 48000, 1.0, 1.0);
    const auto q = requantize(AudioBuffer(x, 48000), 8, false).samples;
    std::vector<double> err(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) err[i] = q[i] - x[i];
    const double snr = 10.0 * std::log10(test::power(x) / test::power(err));
    REQUIRE(snr == Approx(6.02 * 8 + 1.76).margin(1.5));
  }

  SECTION("dithered constant keeps its mean") {
    const AudioBuffer c(std::vector<double>(20000, 0.5 + 0.3 / 128), 16000);
    const auto q = requantize(c, 8, true, 77);
    double mean = 0.0;
    for (double v : q.samples) mean += v;
    mean /= q.samples.size();
    REQUIRE(std::abs(mean - c.samples[0]) <= 1.0 / 128);
    // Each sample moves by at most the quantizer step plus the dither span.
    for (double v : q.samples) REQUIRE(std::abs(v - c.samples[0]) <= 1.5 / 128 + 1e-12);
    REQUIRE(requantize(c, 8, true, 77).samples == q.samples);
    REQUIRE(requantize(c, 8, true, 78).samples != q.samples);
  }

  SECTION("default dither policy") {
    REQUIRE(default_dither(16, 8));
    REQUIRE(default_dither(24, 16));
    REQUIRE_FALSE(default_dither(16, 16));
    REQUIRE_FALSE(default_dither(8, 16));
  }
}
