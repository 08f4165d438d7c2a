#include "asrda/profile/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include <json.hpp>

#include "asrda/error.hpp"

namespace asrda::profile {

namespace fs = std::filesystem;
using nlohmann::json;

void CorpusManifest::validate() const {
  std::set<std::string> seen;
  for (const auto& e : entries) {
    require(!e.audio_path.empty(), ErrorCode::kInvalidArgument, "manifest entry with empty audio path");
    require(seen.insert(e.audio_path).second, ErrorCode::kInvalidArgument, "duplicate manifest path " + e.audio_path);
  }
}

CorpusManifest read_manifest_jsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open manifest " + path.string());
  const fs::path base = path.parent_path();
  CorpusManifest manifest;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::kParseError, where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("audio") || !j["audio"].is_string()) {
      fail(ErrorCode::kParseError, where + ": expected an object with a string \"audio\" field");
    }
    ManifestEntry entry;
    fs::path audio = j["audio"].get<std::string>();
    if (audio.is_relative() && !audio.empty()) audio = base / audio;
    entry.audio_path = audio.lexically_normal().string();
    if (j.contains("text") && j["text"].is_string()) entry.transcript = j["text"].get<std::string>();
    if (j.contains("duration") && j["duration"].is_number()) entry.duration = j["duration"].get<double>();
    manifest.entries.push_back(std::move(entry));
  }
  manifest.validate();
  return manifest;
}

CorpusManifest scan_directory(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(ErrorCode::kIo, "not a directory: " + dir.string());
  std::vector<std::string> paths;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".wav") paths.push_back(e.path().lexically_normal().string());
  }
  std::sort(paths.begin(), paths.end());
  CorpusManifest manifest;
  for (auto& p : paths) manifest.entries.push_back({std::move(p), std::nullopt, std::nullopt});
  return manifest;
}

CorpusManifest load_manifest(const fs::path& path) {
  if (fs::is_directory(path)) return scan_directory(path);
  return read_manifest_jsonl(path);
}

void write_manifest_jsonl(const fs::path& path, const CorpusManifest& manifest) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write manifest " + path.string());
  for (const auto& e : manifest.entries) {
    json j = {{"audio", e.audio_path}};
    if (e.transcript) j["text"] = *e.transcript;
    if (e.duration) j["duration"] = *e.duration;
    out << j.dump() << '\n';
  }
}

}  // namespace asrda::profile
