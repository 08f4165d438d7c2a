#include "asrda/augment/chain.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include "asrda/audio/quantize.hpp"
#include "asrda/audio/resample.hpp"
#include "asrda/audio/wav.hpp"
#include "asrda/error.hpp"
#include "asrda/metrics/loudness.hpp"
#include "asrda/parallel.hpp"
#include "asrda/rng.hpp"

namespace asrda::augment {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum StageSeed : std::uint64_t { kSeedDither = 101, kSeedNoiseCrop, kSeedWhiteNoise };

void run_resample(audio::AudioBuffer& x, const PlanEntry& e, AugmentReport& report) {
  if (x.sample_rate != e.target_sample_rate) x = audio::resample(x, e.target_sample_rate);
  const int bits = e.target_bit_depth;
  if (bits == 8 || bits == 16 || bits == 24) {
    const bool dither = audio::default_dither(x.source_bit_depth, bits);
    x = audio::requantize(x, bits, dither, derive_key(e.seed, kSeedDither));
    report.dithered = dither;
  } else {
    require(bits == 32, ErrorCode::kInvalidArgument, "unsupported target bit depth " + std::to_string(bits));
    x.source_bit_depth = 32;
  }
}

void run_reverb(audio::AudioBuffer& x, const PlanEntry& e, const AssetBank& bank, AugmentReport& report) {
  if (!e.apply_reverb) return;
  require(e.rir_id.has_value(), ErrorCode::kInvalidArgument, "reverb requested without an impulse response id");
  const Asset* rir = bank.find_rir(*e.rir_id);
  require(rir != nullptr, ErrorCode::kInvalidArgument, "unknown impulse response " + *e.rir_id);
  ReverbResult r = apply_reverb(x, rir->audio);
  x = std::move(r.audio);
  report.reverb_peak_gain = r.peak_gain;
}

void run_noise(audio::AudioBuffer& x, const PlanEntry& e, const AssetBank& bank, AugmentReport& report) {
  audio::AudioBuffer generated;
  const audio::AudioBuffer* noise = nullptr;
  if (e.noise_id == kWhiteNoiseId) {
    generated = white_noise(x.frames(), x.sample_rate, derive_key(e.seed, kSeedWhiteNoise));
    noise = &generated;
  } else {
    const Asset* asset = bank.find_noise(e.noise_id);
    require(asset != nullptr, ErrorCode::kInvalidArgument, "unknown noise asset " + e.noise_id);
    noise = &asset->audio;
  }
  NoiseMixResult r = mix_noise(x, *noise, e.target_snr_db, derive_key(e.seed, kSeedNoiseCrop));
  x = std::move(r.audio);
  report.noise_gain = r.noise_gain;
  report.realized_snr_db = r.realized_snr_db;
  report.mix_peak_gain = r.peak_gain;
}

// When a filter runs later, the gain is computed on the filtered signal: the
// filter is linear, so the final output lands on the target loudness.
void run_loudness(audio::AudioBuffer& x, const PlanEntry& e, bool filter_follows, AugmentReport& report) {
  const bool aim_past_filter = filter_follows && e.filter.kind != FilterKind::kNone;
  const double reference = metrics::measure_lufs(aim_past_filter ? apply_filter(x, e.filter) : x);
  LoudnessResult r = normalize_lufs(x, e.target_lufs, reference);
  x = std::move(r.audio);
  report.input_lufs = r.measured_lufs;
  report.lufs_gain_db = r.applied_gain_db;
  report.lufs_shortfall_db = r.shortfall_db;
}

}  // namespace

void to_json(json& j, const AugmentReport& r) {
  j = json{{"output_sample_rate", r.output_sample_rate},
           {"output_bit_depth", r.output_bit_depth},
           {"dithered", r.dithered},
           {"reverb_peak_gain", r.reverb_peak_gain},
           {"noise_gain", r.noise_gain},
           {"realized_snr_db", r.realized_snr_db},
           {"mix_peak_gain", r.mix_peak_gain},
           {"input_lufs", r.input_lufs},
           {"lufs_gain_db", r.lufs_gain_db},
           {"lufs_shortfall_db", r.lufs_shortfall_db},
           {"realized_lufs", r.realized_lufs}};
}

AugmentResult augment_file(const audio::AudioBuffer& source, const PlanEntry& entry, const AssetBank& bank) {
  return augment_file(source, entry, bank, kChainOrder);
}

AugmentResult augment_file(const audio::AudioBuffer& source, const PlanEntry& entry, const AssetBank& bank,
                           std::span<const Stage> order) {
  source.validate();
  AugmentResult out{audio::mixdown_mono(source), {}};
  audio::AudioBuffer& x = out.audio;
  AugmentReport& report = out.report;
  bool filter_done = false;
  for (Stage s : order) {
    const bool filter_follows = !filter_done && std::find(order.begin(), order.end(), Stage::kFilter) != order.end();
    switch (s) {
      case Stage::kResample: run_resample(x, entry, report); break;
      case Stage::kReverb: run_reverb(x, entry, bank, report); break;
      case Stage::kNoise: run_noise(x, entry, bank, report); break;
      case Stage::kSaturation:
        if (entry.saturation_drive) x = saturate(x, *entry.saturation_drive);
        break;
      case Stage::kLoudness: run_loudness(x, entry, filter_follows, report); break;
      case Stage::kFilter:
        x = apply_filter(x, entry.filter);
        filter_done = true;
        break;
    }
  }
  report.realized_lufs = metrics::measure_lufs(x);
  report.output_sample_rate = x.sample_rate;
  report.output_bit_depth = x.source_bit_depth;
  return out;
}

fs::path common_root(std::span<const std::string> paths) {
  if (paths.empty()) return {};
  fs::path root = fs::path(paths.front()).lexically_normal().parent_path();
  for (const auto& p : paths.subspan(1)) {
    const fs::path dir = fs::path(p).lexically_normal().parent_path();
    fs::path common;
    auto a = root.begin();
    auto b = dir.begin();
    for (; a != root.end() && b != dir.end() && *a == *b; ++a, ++b) common /= *a;
    root = common;
  }
  return root;
}

CorpusAugmentSummary augment_corpus(std::span<const PlanEntry> plan, const AssetBank& bank, const fs::path& out_root,
                                    std::size_t jobs) {
  std::vector<std::string> sources;
  for (const auto& e : plan) sources.push_back(e.source_path);
  const fs::path root = common_root(sources);

  struct Outcome {
    std::optional<AugmentReport> report;
    std::string output;
    std::string error;
  };
  std::vector<Outcome> outcomes(plan.size());
  parallel_for(plan.size(), jobs, [&](std::size_t i) {
    const PlanEntry& e = plan[i];
    fs::path rel = fs::path(e.source_path).lexically_normal().lexically_relative(root);
    if (rel.empty() || *rel.begin() == "..") rel = fs::path(e.source_path).filename();
    rel.replace_extension(".wav");
    const fs::path dest = out_root / rel;
    outcomes[i].output = rel.generic_string();
    try {
      const audio::AudioBuffer src = audio::read_wav(e.source_path);
      AugmentResult r = augment_file(src, e, bank);
      audio::write_wav(dest, r.audio, e.target_bit_depth);
      outcomes[i].report = r.report;
    } catch (const std::exception& ex) {
      outcomes[i].error = ex.what();
    }
  });

  fs::create_directories(out_root);
  std::ofstream report_file(out_root / kReportFileName);
  if (!report_file) fail(ErrorCode::kIo, "cannot write " + (out_root / kReportFileName).string());
  CorpusAugmentSummary summary;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    json line = {{"plan", plan[i]}, {"output", outcomes[i].output}};
    if (outcomes[i].report) {
      line["status"] = "ok";
      line["report"] = *outcomes[i].report;
      ++summary.succeeded;
    } else {
      line["status"] = "error";
      line["error"] = outcomes[i].error;
      ++summary.failed;
      summary.errors.push_back(plan[i].source_path + ": " + outcomes[i].error);
    }
    report_file << line.dump() << '\n';
  }
  return summary;
}

}  // namespace asrda::augment
