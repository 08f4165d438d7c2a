#include "asrda/augment/plan.hpp"

#include <algorithm>
#include <cmath>

#include "asrda/error.hpp"
#include "asrda/rng.hpp"

namespace asrda::augment {

using nlohmann::json;

namespace {

// One independent stream per sampled parameter.
enum StreamId : std::uint64_t {
  kStreamRate = 1,
  kStreamDepth,
  kStreamReverb,
  kStreamRir,
  kStreamSnr,
  kStreamNoise,
  kStreamLufs,
  kStreamFilter,
  kStreamDrive,
};

CounterRng stream(std::uint64_t entry_seed, StreamId id) { return CounterRng(derive_key(entry_seed, id)); }

int weighted_pick(const std::vector<WeightedValue>& choices, CounterRng rng) {
  std::size_t total = 0;
  for (const auto& c : choices) total += c.weight;
  require(total > 0, ErrorCode::kInvalidArgument, "empty weighted choice");
  auto r = static_cast<std::size_t>(rng.below(total));
  for (const auto& c : choices) {
    if (r < c.weight) return c.value;
    r -= c.weight;
  }
  return choices.back().value;
}

std::vector<WeightedValue> from_histogram(const profile::Histogram& h) {
  std::vector<WeightedValue> out;
  for (const auto& [value, count] : h) out.push_back({value, count});
  return out;
}

const char* filter_kind_name(FilterKind k) {
  switch (k) {
    case FilterKind::kNone: return "none";
    case FilterKind::kLowpass: return "lowpass";
    case FilterKind::kHighpass: return "highpass";
    case FilterKind::kBandpass: return "bandpass";
  }
  return "none";
}

FilterKind filter_kind_from(const std::string& s) {
  if (s == "none") return FilterKind::kNone;
  if (s == "lowpass") return FilterKind::kLowpass;
  if (s == "highpass") return FilterKind::kHighpass;
  if (s == "bandpass") return FilterKind::kBandpass;
  fail(ErrorCode::kParseError, "unknown filter kind " + s);
}

FilterSpec choose_filter(const FilterRule& rule, int sample_rate, CounterRng rng) {
  if (rule.mode == FilterRule::Mode::kFixed) return rule.fixed;
  const double nyquist = 0.5 * sample_rate;
  const double mu = rule.mean_rolloff_hz;
  if (mu < rule.lowpass_below * nyquist) {
    const double raw = rng.uniform((1.0 - rule.lowpass_spread) * mu, (1.0 + rule.lowpass_spread) * mu);
    const double hi = rule.max_cutoff_fraction * nyquist;
    const double cutoff = std::clamp(raw, std::min(rule.min_cutoff_hz, hi), hi);
    return FilterSpec::lowpass(cutoff);
  }
  if (rng.uniform() < rule.highpass_probability) {
    const double hi = std::min(rule.highpass_max_hz, rule.max_cutoff_fraction * nyquist);
    const double lo = std::min(rule.highpass_min_hz, hi);
    return FilterSpec::highpass(rng.uniform(lo, hi));
  }
  return FilterSpec::none();
}

}  // namespace

void to_json(json& j, const PlanEntry& e) {
  json filter = {{"kind", filter_kind_name(e.filter.kind)}};
  if (e.filter.kind == FilterKind::kLowpass || e.filter.kind == FilterKind::kHighpass) {
    filter["cutoff_hz"] = e.filter.cutoff_hz;
  } else if (e.filter.kind == FilterKind::kBandpass) {
    filter["low_hz"] = e.filter.low_hz;
    filter["high_hz"] = e.filter.high_hz;
  }
  j = json{{"source_path", e.source_path},
           {"seed", e.seed},
           {"target_sample_rate", e.target_sample_rate},
           {"target_bit_depth", e.target_bit_depth},
           {"apply_reverb", e.apply_reverb},
           {"rir_id", e.rir_id ? json(*e.rir_id) : json(nullptr)},
           {"target_snr_db", e.target_snr_db},
           {"noise_id", e.noise_id},
           {"target_lufs", e.target_lufs},
           {"filter", filter},
           {"saturation_drive", e.saturation_drive ? json(*e.saturation_drive) : json(nullptr)}};
}

void from_json(const json& j, PlanEntry& e) {
  e.source_path = j.at("source_path").get<std::string>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.target_sample_rate = j.at("target_sample_rate").get<int>();
  e.target_bit_depth = j.at("target_bit_depth").get<int>();
  e.apply_reverb = j.at("apply_reverb").get<bool>();
  e.rir_id = j.at("rir_id").is_null() ? std::nullopt : std::optional(j.at("rir_id").get<std::string>());
  e.target_snr_db = j.at("target_snr_db").get<double>();
  e.noise_id = j.at("noise_id").get<std::string>();
  e.target_lufs = j.at("target_lufs").get<double>();
  const json& f = j.at("filter");
  e.filter = {};
  e.filter.kind = filter_kind_from(f.at("kind").get<std::string>());
  if (e.filter.kind == FilterKind::kLowpass || e.filter.kind == FilterKind::kHighpass) {
    e.filter.cutoff_hz = f.at("cutoff_hz").get<double>();
  } else if (e.filter.kind == FilterKind::kBandpass) {
    e.filter.low_hz = f.at("low_hz").get<double>();
    e.filter.high_hz = f.at("high_hz").get<double>();
  }
  const json& d = j.at("saturation_drive");
  e.saturation_drive = d.is_null() ? std::nullopt : std::optional(d.get<double>());
}

double reverb_probability(double mean_snr_db, const PlanOptions& options) {
  return std::clamp(options.reverb_constant_db / std::max(mean_snr_db, options.reverb_epsilon_db), 0.0, 1.0);
}

PlanTemplate template_from_profile(const profile::AcousticProfile& p, const PlanOptions& options) {
  p.validate();
  PlanTemplate t;
  t.sample_rates = from_histogram(p.sample_rates);
  t.bit_depths = from_histogram(p.bit_depths);
  t.reverb_probability = reverb_probability(p.snr_db.mean, options);
  t.snr_min_db = p.snr_db.min;
  t.snr_max_db = p.snr_db.max;
  t.lufs_mean = p.lufs.mean;
  t.lufs_std = p.lufs.std;
  t.filter.mode = FilterRule::Mode::kFromRolloff;
  t.filter.mean_rolloff_hz = p.spectral_rolloff_hz.mean;
  return t;
}

PlanTemplate telephony_preset(const TelephonyOptions& options) {
  PlanTemplate t;
  t.sample_rates = {{8000, 1}};
  t.bit_depths = {{options.eight_bit ? 8 : 16, 1}};
  t.reverb_probability = 0.0;
  t.snr_min_db = 15.0;
  t.snr_max_db = 30.0;
  t.lufs_mean = -23.0;
  t.lufs_std = 2.0;
  t.filter.mode = FilterRule::Mode::kFixed;
  t.filter.fixed = FilterSpec::bandpass(300.0, 3400.0);
  t.saturation_drive = std::pair{1.0, 2.0};
  t.white_noise_only = true;
  return t;
}

std::vector<PlanEntry> sample_plan(const PlanTemplate& t, const profile::CorpusManifest& sources,
                                   const AssetBank& bank, std::uint64_t master_seed) {
  require(t.snr_min_db <= t.snr_max_db, ErrorCode::kInvalidArgument, "SNR range is inverted");
  require(t.lufs_std >= 0.0, ErrorCode::kInvalidArgument, "loudness std must be non-negative");
  sources.validate();

  std::vector<PlanEntry> plan;
  plan.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    PlanEntry e;
    e.source_path = sources.entries[i].audio_path;
    e.seed = derive_key(master_seed, i);
    e.target_sample_rate = weighted_pick(t.sample_rates, stream(e.seed, kStreamRate));
    e.target_bit_depth = weighted_pick(t.bit_depths, stream(e.seed, kStreamDepth));

    e.apply_reverb = !bank.rirs().empty() && stream(e.seed, kStreamReverb).uniform() < t.reverb_probability;
    if (e.apply_reverb) {
      e.rir_id = bank.rirs()[stream(e.seed, kStreamRir).below(bank.rirs().size())].id;
    }

    e.target_snr_db = std::clamp(stream(e.seed, kStreamSnr).uniform(t.snr_min_db, t.snr_max_db), t.snr_min_db,
                                 t.snr_max_db);
    if (!t.white_noise_only && !bank.noises().empty()) {
      e.noise_id = bank.noises()[stream(e.seed, kStreamNoise).below(bank.noises().size())].id;
    }

    if (t.lufs_std == 0.0) {
      e.target_lufs = t.lufs_mean;
    } else {
      const double draw = stream(e.seed, kStreamLufs).normal(t.lufs_mean, t.lufs_std);
      e.target_lufs = std::clamp(draw, t.lufs_mean - 3.0 * t.lufs_std, t.lufs_mean + 3.0 * t.lufs_std);
    }

    e.filter = choose_filter(t.filter, e.target_sample_rate, stream(e.seed, kStreamFilter));
    if (t.saturation_drive) {
      const auto [lo, hi] = *t.saturation_drive;
      e.saturation_drive = stream(e.seed, kStreamDrive).uniform(lo, hi);
    }
    plan.push_back(std::move(e));
  }
  return plan;
}

std::vector<PlanEntry> sample_plan(const profile::AcousticProfile& profile, const profile::CorpusManifest& sources,
                                   const AssetBank& bank, std::uint64_t master_seed, const PlanOptions& options) {
  return sample_plan(template_from_profile(profile, options), sources, bank, master_seed);
}

}  // namespace asrda::augment
