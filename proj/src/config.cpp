#include "fadingnet/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fadingnet/csv.hpp"

namespace fadingnet {

namespace {

const char* const kKnownKeys[] = {
    "dist", "mu",     "alpha",  "n_grid", "trials", "m_rule",
    "zeta_rule", "beta", "n0",   "k",      "delta1", "delta2",
    "delta3", "m_min", "seed",   "count_unexpected", "threads",
};

bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  return false;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(key, "config key '" + key + "': expected a number, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    throw ConfigError(key, "config key '" + key + "': expected a nonnegative integer, got '" +
                               value + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

MRule parse_m_rule(const std::string& value) {
  const auto colon = value.find(':');
  const std::string head = trim(value.substr(0, colon));
  const std::string args = colon == std::string::npos ? "" : value.substr(colon + 1);
  MRule rule;
  if (head == "solver") {
    rule.kind = MRule::Kind::solver;
  } else if (head == "fixed") {
    rule.kind = MRule::Kind::fixed;
    rule.fixed_m = parse_u64("m_rule", trim(args));
  } else if (head == "c_log") {
    rule.kind = MRule::Kind::c_log;
    rule.c = parse_double("m_rule", trim(args));
  } else if (head == "c_power") {
    const auto parts = split(args, ',');
    if (parts.size() != 2)
      throw ConfigError("m_rule", "config key 'm_rule': c_power needs 'c_power:<c>,<exponent>'");
    rule.kind = MRule::Kind::c_power;
    rule.c = parse_double("m_rule", parts[0]);
    rule.exponent = parse_double("m_rule", parts[1]);
  } else {
    throw ConfigError("m_rule", "config key 'm_rule': unknown rule '" + head +
                                    "' (solver | fixed:<m> | c_log:<c> | c_power:<c>,<e>)");
  }
  return rule;
}

ZetaRule parse_zeta_rule(const std::string& value) {
  const auto colon = value.find(':');
  const std::string head = trim(value.substr(0, colon));
  const std::string args = colon == std::string::npos ? "" : value.substr(colon + 1);
  ZetaRule rule;
  if (head == "zero") {
    rule.kind = ZetaRule::Kind::zero;
  } else if (head == "constant") {
    rule.kind = ZetaRule::Kind::constant;
    rule.value = parse_double("zeta_rule", trim(args));
  } else if (head == "scaled") {
    const auto parts = split(args, ',');
    if (parts.size() != 2)
      throw ConfigError("zeta_rule",
                        "config key 'zeta_rule': scaled needs 'scaled:<c>,<shape>'");
    rule.kind = ZetaRule::Kind::scaled;
    rule.c = parse_double("zeta_rule", parts[0]);
    if (parts[1] == "log_n_over_n") {
      rule.shape = ZetaRule::Shape::log_n_over_n;
    } else if (parts[1] == "power_n") {
      rule.shape = ZetaRule::Shape::power_n;
    } else {
      throw ConfigError("zeta_rule", "config key 'zeta_rule': unknown shape '" + parts[1] +
                                         "' (log_n_over_n | power_n)");
    }
  } else {
    throw ConfigError("zeta_rule",
                      "config key 'zeta_rule': unknown rule '" + head +
                          "' (zero | constant:<z> | scaled:<c>,<shape>)");
  }
  return rule;
}

std::string m_rule_to_string(const MRule& rule) {
  switch (rule.kind) {
    case MRule::Kind::solver:
      return "solver";
    case MRule::Kind::fixed:
      return "fixed:" + format_u64(rule.fixed_m);
    case MRule::Kind::c_log:
      return "c_log:" + format_double(rule.c);
    case MRule::Kind::c_power:
      return "c_power:" + format_double(rule.c) + "," + format_double(rule.exponent);
  }
  return "solver";
}

std::string zeta_rule_to_string(const ZetaRule& rule) {
  switch (rule.kind) {
    case ZetaRule::Kind::zero:
      return "zero";
    case ZetaRule::Kind::constant:
      return "constant:" + format_double(rule.value);
    case ZetaRule::Kind::scaled:
      return std::string("scaled:") + format_double(rule.c) + "," +
             (rule.shape == ZetaRule::Shape::log_n_over_n ? "log_n_over_n" : "power_n");
  }
  return "zero";
}

}  // namespace

KeyValues read_key_value_text(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "config line " + std::to_string(line_no) +
                                ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("", "config line " + std::to_string(line_no) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

KeyValues read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_key_value_text(buf.str());
}

ExperimentConfig build_config(const KeyValues& file_kv, const KeyValues& flag_kv) {
  KeyValues merged;
  if (const char* env_seed = std::getenv("FADINGNET_SEED"); env_seed && *env_seed)
    merged["seed"] = env_seed;
  for (const auto& [k, v] : file_kv) merged[k] = v;
  for (const auto& [k, v] : flag_kv) merged[k] = v;

  for (const auto& [k, v] : merged)
    if (!known_key(k))
      throw ConfigError(k, "unknown config key '" + k + "'");

  const auto get = [&](const char* key) -> const std::string* {
    const auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };

  // model
  const std::string* dist = get("dist");
  if (!dist) throw ConfigError("dist", "missing required config key 'dist' (rayleigh | pareto)");
  ExperimentConfig config;
  if (*dist == "rayleigh") {
    const double mu = get("mu") ? parse_double("mu", *get("mu")) : 1.0;
    if (!(mu > 0.0)) throw ConfigError("mu", "config key 'mu': must be > 0");
    config.model = ChannelModel::rayleigh_power(mu);
    if (get("alpha"))
      throw ConfigError("alpha", "config key 'alpha' does not apply to the rayleigh model");
  } else if (*dist == "pareto") {
    if (!get("alpha"))
      throw ConfigError("alpha", "missing required config key 'alpha' for the pareto model");
    const double alpha = parse_double("alpha", *get("alpha"));
    if (!(alpha > 1.0)) throw ConfigError("alpha", "config key 'alpha': must be > 1");
    config.model = ChannelModel::pareto_type(alpha);
    if (get("mu"))
      throw ConfigError("mu", "config key 'mu' does not apply to the pareto model");
  } else {
    throw ConfigError("dist", "config key 'dist': expected rayleigh or pareto, got '" +
                                  *dist + "'");
  }

  if (!get("n_grid")) throw ConfigError("n_grid", "missing required config key 'n_grid'");
  config.n_grid.clear();
  for (const auto& part : split(*get("n_grid"), ',')) {
    if (part.empty())
      throw ConfigError("n_grid", "config key 'n_grid': empty entry in list");
    config.n_grid.push_back(parse_u64("n_grid", part));
  }

  if (!get("trials")) throw ConfigError("trials", "missing required config key 'trials'");
  config.trials = parse_u64("trials", *get("trials"));

  config.m_rule = get("m_rule") ? parse_m_rule(*get("m_rule")) : MRule{};
  config.zeta_rule = get("zeta_rule") ? parse_zeta_rule(*get("zeta_rule")) : ZetaRule{};
  config.beta = get("beta") ? parse_double("beta", *get("beta")) : 1.0;
  config.n0 = get("n0") ? parse_double("n0", *get("n0")) : 1.0;
  config.params.beta = config.beta;
  config.params.k_const = get("k") ? parse_double("k", *get("k")) : 1.5;
  config.params.delta1 = get("delta1") ? parse_double("delta1", *get("delta1")) : 0.05;
  config.params.delta2 = get("delta2") ? parse_double("delta2", *get("delta2")) : 0.05;
  config.params.delta3 = get("delta3") ? parse_double("delta3", *get("delta3")) : 0.05;
  config.params.m_min = get("m_min") ? parse_u64("m_min", *get("m_min")) : 1;
  config.seed = get("seed") ? parse_u64("seed", *get("seed")) : 1;

  if (const std::string* cu = get("count_unexpected")) {
    if (*cu == "on") {
      config.count_unexpected = true;
    } else if (*cu == "off") {
      config.count_unexpected = false;
    } else {
      throw ConfigError("count_unexpected",
                        "config key 'count_unexpected': expected on or off, got '" + *cu + "'");
    }
  }

  if (get("threads"))
    config.threads = static_cast<unsigned>(parse_u64("threads", *get("threads")));

  if (config.m_rule.kind == MRule::Kind::solver && !config.model.theorem_ready())
    throw ConfigError("alpha", "config key 'alpha': alpha must exceed 2 for the solver m rule");

  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", e.what());
  }
  return config;
}

std::vector<std::pair<std::string, std::string>> config_to_key_values(
    const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> kv;
  if (config.model.variant() == Fading::RayleighPower) {
    kv.emplace_back("dist", "rayleigh");
    kv.emplace_back("mu", format_double(config.model.mu()));
  } else {
    kv.emplace_back("dist", "pareto");
    kv.emplace_back("alpha", format_double(config.model.alpha()));
  }
  std::string grid;
  for (std::size_t j = 0; j < config.n_grid.size(); ++j) {
    if (j) grid += ",";
    grid += format_u64(config.n_grid[j]);
  }
  kv.emplace_back("n_grid", grid);
  kv.emplace_back("trials", format_u64(config.trials));
  kv.emplace_back("m_rule", m_rule_to_string(config.m_rule));
  kv.emplace_back("zeta_rule", zeta_rule_to_string(config.zeta_rule));
  kv.emplace_back("beta", format_double(config.beta));
  kv.emplace_back("n0", format_double(config.n0));
  kv.emplace_back("k", format_double(config.params.k_const));
  kv.emplace_back("delta1", format_double(config.params.delta1));
  kv.emplace_back("delta2", format_double(config.params.delta2));
  kv.emplace_back("delta3", format_double(config.params.delta3));
  kv.emplace_back("m_min", format_u64(config.params.m_min));
  kv.emplace_back("seed", format_u64(config.seed));
  kv.emplace_back("count_unexpected", config.count_unexpected ? "on" : "off");
  kv.emplace_back("threads", format_u64(config.threads));
  return kv;
}

std::string config_to_text(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [k, v] : config_to_key_values(config)) out += k + " = " + v + "\n";
  return out;
}

}  // namespace fadingnet
