#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fadingnet/experiments.hpp"

namespace fadingnet {

// FNV-1a over the file's bytes, hex-encoded. Throws when the file is missing.
std::string file_digest_hex(const std::string& path);

struct OutputFile {
  std::string path;
  std::string digest;
};

struct RunManifest {
  ExperimentConfig config;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string started_at;  // ISO 8601, UTC
  double wall_seconds = 0.0;
  std::vector<OutputFile> output_files;
};

std::string utc_timestamp_now();

// JSON with the config echoed as the flat key/value map build_config accepts.
void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace fadingnet
