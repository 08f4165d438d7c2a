#include "asrda/profile/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asrda/error.hpp"

namespace asrda::profile {

using nlohmann::json;

StatBlock StatBlock::of(std::span<const double> values) {
  require(!values.empty(), ErrorCode::kEmptyCorpus, "no values to summarize");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  StatBlock s;
  s.min = *lo;
  s.max = *hi;
  if (s.min == s.max) {
    s.mean = s.min;
    return s;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  const auto n = static_cast<double>(values.size());
  s.mean = std::clamp(sum / n, s.min, s.max);
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(sq / n);
  return s;
}

namespace {

void check_block(const StatBlock& b, const char* name) {
  const std::string n(name);
  require(std::isfinite(b.mean) && std::isfinite(b.std) && std::isfinite(b.min) && std::isfinite(b.max),
          ErrorCode::kInvalidArgument, n + ": non-finite statistic");
  require(b.min <= b.mean && b.mean <= b.max, ErrorCode::kInvalidArgument, n + ": expected min <= mean <= max");
  require(b.std >= 0.0, ErrorCode::kInvalidArgument, n + ": negative std");
}

void check_histogram(const Histogram& h, std::size_t total, const char* name) {
  std::size_t sum = 0;
  for (const auto& [value, count] : h) {
    require(value > 0 && count > 0, ErrorCode::kInvalidArgument, std::string(name) + ": entries must be positive");
    sum += count;
  }
  require(sum == total, ErrorCode::kInvalidArgument, std::string(name) + ": counts do not sum to num_files");
}

json block_to_json(const StatBlock& b) { return {{"mean", b.mean}, {"std", b.std}, {"min", b.min}, {"max", b.max}}; }

json histogram_to_json(const Histogram& h) {
  json arr = json::array();
  for (const auto& [value, count] : h) arr.push_back({{"value", value}, {"count", count}});
  return arr;
}

StatBlock block_from_json(const json& j) {
  return {j.at("mean").get<double>(), j.at("std").get<double>(), j.at("min").get<double>(), j.at("max").get<double>()};
}

Histogram histogram_from_json(const json& j) {
  Histogram h;
  for (const auto& item : j) {
    const int value = item.at("value").get<int>();
    const auto count = item.at("count").get<std::size_t>();
    require(h.emplace(value, count).second, ErrorCode::kParseError, "duplicate histogram value");
  }
  return h;
}

}  // namespace

void AcousticProfile::validate() const {
  require(num_files >= 1, ErrorCode::kInvalidArgument, "profile must describe at least one file");
  check_histogram(sample_rates, num_files, "sample_rates");
  check_histogram(bit_depths, num_files, "bit_depths");
  check_histogram(channel_counts, num_files, "channel_counts");
  check_block(snr_db, "snr_db");
  check_block(lufs, "lufs");
  check_block(spectral_centroid_hz, "spectral_centroid_hz");
  check_block(spectral_rolloff_hz, "spectral_rolloff_hz");
}

std::string profile_to_json(const AcousticProfile& p) {
  json j;
  j["version"] = kProfileSchemaVersion;
  j["num_files"] = p.num_files;
  j["sample_rates"] = histogram_to_json(p.sample_rates);
  j["bit_depths"] = histogram_to_json(p.bit_depths);
  j["channel_counts"] = histogram_to_json(p.channel_counts);
  j["snr_db"] = block_to_json(p.snr_db);
  j["lufs"] = block_to_json(p.lufs);
  j["spectral_centroid_hz"] = block_to_json(p.spectral_centroid_hz);
  j["spectral_rolloff_hz"] = block_to_json(p.spectral_rolloff_hz);
  return j.dump(2) + "\n";
}

AcousticProfile profile_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParseError, std::string("profile: ") + e.what());
  }
  if (!j.is_object() || !j.contains("version") || !j["version"].is_number_integer()) {
    fail(ErrorCode::kParseError, "profile: missing integer \"version\"");
  }
  const int version = j["version"].get<int>();
  if (version != kProfileSchemaVersion) {
    fail(ErrorCode::kUnsupportedVersion, "profile schema version " + std::to_string(version));
  }
  AcousticProfile p;
  try {
    p.num_files = j.at("num_files").get<std::size_t>();
    p.sample_rates = histogram_from_json(j.at("sample_rates"));
    p.bit_depths = histogram_from_json(j.at("bit_depths"));
    p.channel_counts = histogram_from_json(j.at("channel_counts"));
    p.snr_db = block_from_json(j.at("snr_db"));
    p.lufs = block_from_json(j.at("lufs"));
    p.spectral_centroid_hz = block_from_json(j.at("spectral_centroid_hz"));
    p.spectral_rolloff_hz = block_from_json(j.at("spectral_rolloff_hz"));
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, std::string("profile: ") + e.what());
  }
  try {
    p.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kParseError, e.what());
  }
  return p;
}

void write_profile(const std::filesystem::path& path, const AcousticProfile& profile) {
  profile.validate();
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write profile " + path.string());
  out << profile_to_json(profile);
}

AcousticProfile read_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open profile " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return profile_from_json(ss.str());
}

}  // namespace asrda::profile
