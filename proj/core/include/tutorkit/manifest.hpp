#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tutorkit {

// Provenance written next to every file-producing run: what ran, on which
// inputs (content digests), under which config and seed. The timestamp
// lives only here so report files stay byte-identical across reruns.
struct RunManifest {
  std::string subcommand;
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path, fnv64
  std::uint64_t seed = 0;
  std::string timestamp;  // ISO-8601 UTC
  std::string tool_version;
};

std::string iso8601_utc_now();

std::string file_digest(const std::string& path);

std::string manifest_to_json(const RunManifest& manifest);

void write_manifest(const std::string& out_dir, const RunManifest& manifest);

}  // namespace tutorkit
