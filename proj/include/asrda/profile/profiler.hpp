#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asrda/audio/buffer.hpp"
#include "asrda/metrics/descriptors.hpp"
#include "asrda/profile/manifest.hpp"
#include "asrda/profile/profile.hpp"

namespace asrda::profile {

struct FileAnalysis {
  std::string path;
  audio::TechnicalAttributes attributes;
  metrics::AcousticDescriptors descriptors;
};

struct SkippedFile {
  std::string path;
  std::string reason;
};

struct ProfileOptions {
  /// Analyze a seeded uniform subset of this many files instead of the whole corpus.
  std::optional<std::size_t> sample_limit;
  std::uint64_t seed = 0;
  /// Worker threads; 0 selects default_jobs().
  std::size_t jobs = 0;
};

struct ProfileResult {
  AcousticProfile profile;
  std::vector<FileAnalysis> analyzed;
  std::vector<SkippedFile> skipped;
  /// Files selected for analysis (manifest size or sample_limit); analyzed + skipped.
  std::size_t considered = 0;
};

/// Reads and analyzes one file. Throws on decode or metric failure.
FileAnalysis analyze_file(const std::string& path);

/// Reduces per-file analyses into a profile. Throws EmptyCorpus when empty.
AcousticProfile aggregate(std::span<const FileAnalysis> files);

/// Analysis phase over a corpus.
///
/// Entries are canonicalized by path before subset sampling, so permuting the
/// manifest does not change the result; worker count does not either.
/// Files that fail to decode or violate metric preconditions are skipped and
/// reported. Throws EmptyCorpus when nothing could be analyzed.
ProfileResult profile_corpus(const CorpusManifest& manifest, const ProfileOptions& options = {});

}  // namespace asrda::profile
