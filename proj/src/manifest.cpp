#include "fadingnet/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "fadingnet/config.hpp"
#include "fadingnet/csv.hpp"

namespace fadingnet {

std::string file_digest_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file_digest_hex: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize j = 0; j < got; ++j) {
      h ^= static_cast<unsigned char>(buf[j]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json echo;
  for (const auto& [k, v] : config_to_key_values(manifest.config)) echo[k] = v;
  j["config"] = echo;
  j["seed"] = manifest.seed;
  j["tool_version"] = manifest.tool_version;
  j["started_at"] = manifest.started_at;
  j["wall_seconds"] = manifest.wall_seconds;
  auto files = nlohmann::ordered_json::array();
  for (const auto& f : manifest.output_files)
    files.push_back({{"path", f.path}, {"digest", f.digest}});
  j["output_files"] = files;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace fadingnet
