#include "tutorkit/manifest.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tutorkit/hash.hpp"
#include "tutorkit/model.hpp"

namespace tutorkit {

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open file for digest: " + path);
  }
  Fnv1a64 hash;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    hash.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return hash.hex();
}

std::string manifest_to_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["subcommand"] = manifest.subcommand;
  j["config_hash"] = manifest.config_hash;
  j["input_digests"] = nlohmann::json::array();
  for (const auto& [path, digest] : manifest.input_digests) {
    j["input_digests"].push_back({{"path", path}, {"fnv1a64", digest}});
  }
  j["seed"] = manifest.seed;
  j["timestamp"] = manifest.timestamp;
  j["tool_version"] = manifest.tool_version;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& out_dir, const RunManifest& manifest) {
  const std::filesystem::path path =
      std::filesystem::path(out_dir) / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write manifest: " + path.string());
  }
  out << manifest_to_json(manifest);
}

}  // namespace tutorkit
