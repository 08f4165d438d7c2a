#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "asrda/audio/buffer.hpp"
#include "asrda/augment/assets.hpp"
#include "asrda/augment/plan.hpp"

namespace asrda::augment {

enum class Stage { kResample, kReverb, kNoise, kSaturation, kLoudness, kFilter };

/// x_aug = F_filt(F_lufs(F_sat(F_noise(F_rev(R(x)))))); saturation only runs
/// when the plan entry carries a drive.
inline constexpr std::array<Stage, 6> kChainOrder = {Stage::kResample, Stage::kReverb,   Stage::kNoise,
                                                     Stage::kSaturation, Stage::kLoudness, Stage::kFilter};

struct AugmentReport {
  int output_sample_rate = 0;
  int output_bit_depth = 0;
  bool dithered = false;
  double reverb_peak_gain = 1.0;
  double noise_gain = 0.0;
  double realized_snr_db = 0.0;
  double mix_peak_gain = 1.0;
  double input_lufs = 0.0;     // reference the loudness gain was computed from
  double lufs_gain_db = 0.0;
  double lufs_shortfall_db = 0.0;
  double realized_lufs = 0.0;  // measured on the final output
};

void to_json(nlohmann::json& j, const AugmentReport& r);

struct AugmentResult {
  audio::AudioBuffer audio;
  AugmentReport report;
};

/// Runs the operator chain for one plan entry. The input is mixed down to mono.
AugmentResult augment_file(const audio::AudioBuffer& source, const PlanEntry& entry, const AssetBank& bank);

/// Same, with an explicit stage order (used to study reordering effects).
AugmentResult augment_file(const audio::AudioBuffer& source, const PlanEntry& entry, const AssetBank& bank,
                           std::span<const Stage> order);

inline constexpr const char* kReportFileName = "augment_report.jsonl";

struct CorpusAugmentSummary {
  std::size_t succeeded = 0;
  std::size_t failed = 0;
  std::vector<std::string> errors;
};

/// Longest common directory of the given file paths.
std::filesystem::path common_root(std::span<const std::string> paths);

/// Augments every plan entry, writing WAVs under `out_root` mirroring the
/// layout below the sources' common root, plus a JSONL report with one line
/// per entry (plan, realized metrics, status) in plan order.
CorpusAugmentSummary augment_corpus(std::span<const PlanEntry> plan, const AssetBank& bank,
                                    const std::filesystem::path& out_root, std::size_t jobs = 0);

}  // namespace asrda::augment
