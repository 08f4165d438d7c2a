#include "asrda/profile/profiler.hpp"

#include <algorithm>
#include <variant>

#include "asrda/audio/wav.hpp"
#include "asrda/error.hpp"
#include "asrda/parallel.hpp"
#include "asrda/sampling.hpp"

namespace asrda::profile {

FileAnalysis analyze_file(const std::string& path) {
  const audio::AudioBuffer buf = audio::read_wav(path);
  return {path, buf.attributes(), metrics::analyze(buf)};
}

AcousticProfile aggregate(std::span<const FileAnalysis> files) {
  require(!files.empty(), ErrorCode::kEmptyCorpus, "no analyzable files");
  AcousticProfile p;
  p.num_files = files.size();
  std::vector<double> snr, lufs, centroid, rolloff;
  for (const auto& f : files) {
    ++p.sample_rates[f.attributes.sample_rate];
    ++p.bit_depths[f.attributes.bit_depth];
    ++p.channel_counts[f.attributes.channel_count];
    snr.push_back(f.descriptors.snr_db);
    lufs.push_back(f.descriptors.lufs);
    centroid.push_back(f.descriptors.spectral_centroid_hz);
    rolloff.push_back(f.descriptors.spectral_rolloff_hz);
  }
  p.snr_db = StatBlock::of(snr);
  p.lufs = StatBlock::of(lufs);
  p.spectral_centroid_hz = StatBlock::of(centroid);
  p.spectral_rolloff_hz = StatBlock::of(rolloff);
  return p;
}

ProfileResult profile_corpus(const CorpusManifest& manifest, const ProfileOptions& options) {
  require(!manifest.empty(), ErrorCode::kEmptyCorpus, "no analyzable files: manifest is empty");
  manifest.validate();

  std::vector<std::string> paths;
  paths.reserve(manifest.size());
  for (const auto& e : manifest.entries) paths.push_back(e.audio_path);
  std::sort(paths.begin(), paths.end());

  const std::size_t limit = options.sample_limit.value_or(paths.size());
  const auto chosen = sample_indices(paths.size(), limit, options.seed);

  using Outcome = std::variant<FileAnalysis, SkippedFile>;
  std::vector<Outcome> outcomes(chosen.size());
  parallel_for(chosen.size(), options.jobs, [&](std::size_t i) {
    const std::string& path = paths[chosen[i]];
    try {
      outcomes[i] = analyze_file(path);
    } catch (const std::exception& e) {
      outcomes[i] = SkippedFile{path, e.what()};
    }
  });

  ProfileResult result;
  result.considered = chosen.size();
  for (auto& o : outcomes) {
    if (auto* a = std::get_if<FileAnalysis>(&o)) {
      result.analyzed.push_back(std::move(*a));
    } else {
      result.skipped.push_back(std::move(std::get<SkippedFile>(o)));
    }
  }
  if (result.analyzed.empty()) {
    fail(ErrorCode::kEmptyCorpus, "no analyzable files (" + std::to_string(result.skipped.size()) + " skipped)");
  }
  result.profile = aggregate(result.analyzed);
  return result;
}

}  // namespace asrda::profile
