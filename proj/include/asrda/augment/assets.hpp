#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "asrda/audio/buffer.hpp"

namespace asrda::augment {

struct Asset {
  std::string id;
  audio::AudioBuffer audio;
};

/// Mono copy of `rir` scaled to unit total energy. Throws InvalidArgument if silent.
audio::AudioBuffer normalize_rir(const audio::AudioBuffer& rir);

/// Read-only collection of impulse responses and noise recordings.
/// RIRs are stored energy-normalized; all assets are mono.
class AssetBank {
 public:
  void add_rir(std::string id, const audio::AudioBuffer& rir);
  /// Throws InvalidArgument for silent noise.
  void add_noise(std::string id, const audio::AudioBuffer& noise);

  const std::vector<Asset>& rirs() const { return rirs_; }
  const std::vector<Asset>& noises() const { return noises_; }

  const Asset* find_rir(const std::string& id) const;
  const Asset* find_noise(const std::string& id) const;

  /// Loads every *.wav under the given directories; ids are the paths relative
  /// to their directory, and assets are kept in lexicographic id order.
  static AssetBank load(const std::optional<std::filesystem::path>& rir_dir,
                        const std::optional<std::filesystem::path>& noise_dir);

 private:
  std::vector<Asset> rirs_;
  std::vector<Asset> noises_;
};

}  // namespace asrda::augment
