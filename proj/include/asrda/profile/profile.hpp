#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

namespace asrda::profile {

inline constexpr int kProfileSchemaVersion = 1;

/// Summary statistics of one descriptor; std is the population deviation.
struct StatBlock {
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;

  bool operator==(const StatBlock&) const = default;

  /// Throws EmptyCorpus for empty input. A constant sequence yields
  /// mean = min = max and std = 0 exactly.
  static StatBlock of(std::span<const double> values);
};

/// value -> number of files carrying it
using Histogram = std::map<int, std::size_t>;

/// Statistical profile of a corpus: technical attribute histograms and
/// descriptor ranges that parameterize augmentation.
struct AcousticProfile {
  std::size_t num_files = 0;
  Histogram sample_rates;
  Histogram bit_depths;
  Histogram channel_counts;
  StatBlock snr_db;
  StatBlock lufs;
  StatBlock spectral_centroid_hz;
  StatBlock spectral_rolloff_hz;

  bool operator==(const AcousticProfile&) const = default;

  /// Throws InvalidArgument when an invariant does not hold.
  void validate() const;
};

/// Versioned JSON document (schema v1).
std::string profile_to_json(const AcousticProfile& profile);

/// Throws ParseError for malformed documents and UnsupportedVersion for any
/// version other than kProfileSchemaVersion. The result is validated.
AcousticProfile profile_from_json(std::string_view text);

void write_profile(const std::filesystem::path& path, const AcousticProfile& profile);
AcousticProfile read_profile(const std::filesystem::path& path);

}  // namespace asrda::profile
