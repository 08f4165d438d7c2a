#include "asrda/augment/assets.hpp"

#include <algorithm>
#include <cmath>

#include "asrda/audio/wav.hpp"
#include "asrda/error.hpp"
#include "asrda/profile/manifest.hpp"

namespace asrda::augment {

namespace fs = std::filesystem;

audio::AudioBuffer normalize_rir(const audio::AudioBuffer& rir) {
  audio::AudioBuffer mono = audio::mixdown_mono(rir);
  double energy = 0.0;
  for (double v : mono.samples) energy += v * v;
  require(energy > 0.0, ErrorCode::kInvalidArgument, "impulse response is silent");
  const double g = 1.0 / std::sqrt(energy);
  for (double& v : mono.samples) v *= g;
  return mono;
}

void AssetBank::add_rir(std::string id, const audio::AudioBuffer& rir) {
  rirs_.push_back({std::move(id), normalize_rir(rir)});
}

void AssetBank::add_noise(std::string id, const audio::AudioBuffer& noise) {
  audio::AudioBuffer mono = audio::mixdown_mono(noise);
  require(audio::peak_abs(mono.samples) >= 1e-6, ErrorCode::kInvalidArgument, "noise asset " + id + " is silent");
  noises_.push_back({std::move(id), std::move(mono)});
}

const Asset* AssetBank::find_rir(const std::string& id) const {
  auto it = std::find_if(rirs_.begin(), rirs_.end(), [&](const Asset& a) { return a.id == id; });
  return it == rirs_.end() ? nullptr : &*it;
}

const Asset* AssetBank::find_noise(const std::string& id) const {
  auto it = std::find_if(noises_.begin(), noises_.end(), [&](const Asset& a) { return a.id == id; });
  return it == noises_.end() ? nullptr : &*it;
}

AssetBank AssetBank::load(const std::optional<fs::path>& rir_dir, const std::optional<fs::path>& noise_dir) {
  AssetBank bank;
  if (rir_dir) {
    for (const auto& e : profile::scan_directory(*rir_dir).entries) {
      bank.add_rir(fs::relative(e.audio_path, *rir_dir).generic_string(), audio::read_wav(e.audio_path));
    }
  }
  if (noise_dir) {
    for (const auto& e : profile::scan_directory(*noise_dir).entries) {
      bank.add_noise(fs::relative(e.audio_path, *noise_dir).generic_string(), audio::read_wav(e.audio_path));
    }
  }
  return bank;
}

}  // namespace asrda::augment
