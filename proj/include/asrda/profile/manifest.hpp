#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace asrda::profile {

struct ManifestEntry {
  std::string audio_path;
  std::optional<std::string> transcript;
  std::optional<double> duration;

  bool operator==(const ManifestEntry&) const = default;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }

  /// Throws InvalidArgument on empty or duplicate paths.
  void validate() const;
};

/// JSONL manifest: one {"audio": ..., "text": ..., "duration": ...} object per
/// line; blank lines are ignored. Relative audio paths are resolved against
/// the manifest's directory. Throws ParseError with the offending line number.
CorpusManifest read_manifest_jsonl(const std::filesystem::path& path);

/// Recursive scan for *.wav (case-insensitive), sorted lexicographically.
CorpusManifest scan_directory(const std::filesystem::path& dir);

/// Directory -> scan_directory, anything else -> read_manifest_jsonl.
CorpusManifest load_manifest(const std::filesystem::path& path);

void write_manifest_jsonl(const std::filesystem::path& path, const CorpusManifest& manifest);

}  // namespace asrda::profile
