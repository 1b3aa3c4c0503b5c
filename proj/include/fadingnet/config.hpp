#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fadingnet/experiments.hpp"

namespace fadingnet {

// Configuration error naming the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

using KeyValues = std::map<std::string, std::string>;

// Flat `key = value` lines; '#' starts a comment. Unknown keys are rejected
// when the map is resolved into a config.
KeyValues read_key_value_text(const std::string& text);
KeyValues read_key_value_file(const std::string& path);

// Resolves layered key/value sources into a validated config. Precedence,
// lowest first: built-in defaults, FADINGNET_SEED (seed only), file, flags.
ExperimentConfig build_config(const KeyValues& file_kv, const KeyValues& flag_kv);

// Resolved config back to its flat representation; build_config on the
// result reproduces the config exactly.
std::vector<std::pair<std::string, std::string>> config_to_key_values(
    const ExperimentConfig& config);
std::string config_to_text(const ExperimentConfig& config);

}  // namespace fadingnet
