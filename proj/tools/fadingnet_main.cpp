#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fadingnet/config.hpp"
#include "fadingnet/csv.hpp"
#include "fadingnet/manifest.hpp"
#include "fadingnet/simulation.hpp"
#include "fadingnet/version.hpp"

namespace fs = std::filesystem;
using namespace fadingnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Flag values destined for the config key/value overlay.
struct CommonFlags {
  std::optional<std::string> config_path;
  KeyValues flags;
  std::string out_dir = ".";
  std::vector<std::uint64_t> n_values;

  ExperimentConfig resolve(const KeyValues& injected_defaults = {}) const {
    KeyValues file_kv = injected_defaults;
    if (config_path) {
      for (const auto& [k, v] : read_key_value_file(*config_path)) file_kv[k] = v;
    }
    KeyValues flag_kv = flags;
    if (!n_values.empty()) {
      std::string grid;
      for (std::size_t j = 0; j < n_values.size(); ++j) {
        if (j) grid += ",";
        grid += format_u64(n_values[j]);
      }
      flag_kv["n_grid"] = grid;
    }
    return build_config(file_kv, flag_kv);
  }
};

// One --<name> flag mirrored into the config key <key>.
void add_config_flag(CLI::App* cmd, CommonFlags* state, const std::string& name,
                     const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      name, [state, key](const std::string& v) { state->flags[key] = v; }, help);
}

void add_common_config_flags(CLI::App* cmd, CommonFlags* state) {
  cmd->add_option("--config", state->config_path,
                  "flat key = value config file; flags override file values");
  add_config_flag(cmd, state, "--dist", "dist", "channel model: rayleigh | pareto");
  add_config_flag(cmd, state, "--mu", "mu", "mean channel power (rayleigh)");
  add_config_flag(cmd, state, "--alpha", "alpha", "tail parameter (pareto, > 2 for solver)");
  cmd->add_option("--n", state->n_values, "grid point n (repeatable)");
  add_config_flag(cmd, state, "--n-grid", "n_grid", "comma-separated n grid");
  add_config_flag(cmd, state, "--trials", "trials", "Monte Carlo trials per grid point");
  add_config_flag(cmd, state, "--m-rule", "m_rule",
                  "solver | fixed:<m> | c_log:<c> | c_power:<c>,<e>");
  cmd->add_option_function<std::string>(
      "--m", [state](const std::string& v) { state->flags["m_rule"] = "fixed:" + v; },
      "shorthand for --m-rule fixed:<m>");
  add_config_flag(cmd, state, "--zeta-rule", "zeta_rule",
                  "zero | constant:<z> | scaled:<c>,<shape>");
  cmd->add_option_function<std::string>(
      "--zeta", [state](const std::string& v) { state->flags["zeta_rule"] = "constant:" + v; },
      "shorthand for --zeta-rule constant:<z>");
  add_config_flag(cmd, state, "--beta", "beta", "SINR threshold");
  add_config_flag(cmd, state, "--n0", "n0", "noise power");
  add_config_flag(cmd, state, "--k", "k", "interference headroom constant K > 1");
  add_config_flag(cmd, state, "--delta1", "delta1", "slack constant delta1");
  add_config_flag(cmd, state, "--delta2", "delta2", "slack constant delta2");
  add_config_flag(cmd, state, "--delta3", "delta3", "slack constant delta3");
  add_config_flag(cmd, state, "--m-min", "m_min", "smallest m the solver considers");
  add_config_flag(cmd, state, "--seed", "seed", "master seed (also env FADINGNET_SEED)");
  add_config_flag(cmd, state, "--count-unexpected", "count_unexpected",
                  "count mistakenly activated pairs that meet the SINR bar: on | off");
  add_config_flag(cmd, state, "--threads", "threads",
                  "worker count; changes speed only, never output bytes");
  cmd->add_option("--out-dir", state->out_dir, "directory for output files");
}

std::string verifier_csv(const VerifierReport& report) {
  std::string text = csv_line({"n", "statistic", "empirical_value", "bound_or_target"});
  for (const auto& row : report)
    text += csv_line({format_u64(row.n), row.statistic, format_double(row.empirical),
                      format_double(row.bound_or_target)});
  return text;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

void emit_run(const CommonFlags& state, const ExperimentConfig& config,
              const std::string& csv_name, const std::string& csv_text,
              const std::string& started_at,
              std::chrono::steady_clock::time_point t0) {
  fs::create_directories(state.out_dir);
  const std::string csv_path = (fs::path(state.out_dir) / csv_name).string();
  write_file(csv_path, csv_text);

  RunManifest manifest;
  manifest.config = config;
  manifest.seed = config.seed;
  manifest.tool_version = tool_version();
  manifest.started_at = started_at;
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  manifest.output_files.push_back({csv_path, file_digest_hex(csv_path)});
  write_manifest((fs::path(state.out_dir) / "manifest.json").string(), manifest);
  std::cerr << "wrote " << csv_path << "\n";
}

int run_sweep(const CommonFlags& state) {
  const auto started_at = utc_timestamp_now();
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig config = state.resolve();
  const std::vector<SweepRow> rows = run_throughput_sweep(config);

  std::string text = csv_line({"n", "m", "zeta", "trials", "mean_throughput",
                               "sd_throughput", "p_all_success"});
  for (const auto& r : rows)
    text += csv_line({format_u64(r.n), format_u64(r.m_used), format_double(r.zeta_used),
                      format_u64(r.trials), format_double(r.mean_throughput),
                      format_double(r.sd_throughput),
                      format_double(r.p_all_intended_success)});
  emit_run(state, config, "sweep.csv", text, started_at, t0);
  return kExitOk;
}

int run_solve_m(const CommonFlags& state) {
  const ExperimentConfig config = state.resolve({{"trials", "1"}});
  std::string text = csv_line({"n", "zeta", "max_m", "lhs_at_max", "rhs_at_max", "phi", "l"});
  for (const std::size_t n : config.n_grid) {
    const double zeta = resolve_zeta(config, n);
    const std::size_t max_m = max_feasible_m(config.model, n, zeta, config.params);
    std::vector<std::string> cells{format_u64(n), format_double(zeta), format_u64(max_m)};
    if (max_m >= 1) {
      const FeasibilityReport rep =
          theorem_margin(config.model, n, max_m, zeta, config.params);
      cells.insert(cells.end(), {format_double(rep.lhs), format_double(rep.rhs),
                                 format_double(rep.phi), format_double(rep.l_value)});
    } else {
      cells.insert(cells.end(), {"", "", "", ""});
    }
    text += csv_line(cells);
  }
  std::cout << text;
  return kExitOk;
}

int run_tolerance(const CommonFlags& state) {
  const ExperimentConfig config = state.resolve({{"trials", "1"}});
  const auto points = corollary_tolerance(config.model, config.n_grid, config.params);
  std::string text = csv_line({"n", "t_n", "zeta_threshold"});
  for (const auto& p : points)
    text += csv_line({format_u64(p.n), format_u64(p.t_n), format_double(p.zeta_threshold)});
  std::cout << text;
  return kExitOk;
}

int run_verify(const CommonFlags& state, const std::string& target, double super_zeta) {
  const bool known =
      target == "lemma1" || target == "lemma2" || target == "lemma3" ||
      target == "lemma4" || target == "falk" || target == "corollary";
  if (!known) {
    std::cerr << "unknown verify target '" << target
              << "' (expected lemma1 | lemma2 | lemma3 | lemma4 | falk | corollary)\n";
    return kExitUsage;
  }

  const auto started_at = utc_timestamp_now();
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig config = state.resolve();

  VerifierReport report;
  if (target == "lemma1") {
    report = verify_error_concentration(config, ErrorKind::first);
  } else if (target == "lemma2") {
    report = verify_error_concentration(config, ErrorKind::second);
  } else if (target == "lemma3") {
    report = verify_direct_power(config);
  } else if (target == "lemma4") {
    report = verify_interference(config);
  } else if (target == "falk") {
    report = verify_falk_normality(config);
  } else {
    report = verify_tolerance(config, super_zeta);
  }

  const std::string text = verifier_csv(report);
  std::cout << text;
  emit_run(state, config, "verify_" + target + ".csv", text, started_at, t0);
  return kExitOk;
}

int run_slot_dump(const CommonFlags& state, const std::string& out_path) {
  if (state.n_values.size() != 1)
    throw ConfigError("n_grid", "slot needs exactly one --n");
  const ExperimentConfig config = state.resolve({{"trials", "1"}});
  const std::size_t n_sz = config.n_grid.front();
  const std::size_t m_sz = resolve_m(config, n_sz);
  const double zeta = resolve_zeta(config, n_sz);

  Rng stream = Rng::derive(config.seed, kStreamSlotDebug, 0, 0);
  const SlotRealization slot = draw_direct_gains(config.model, n_sz, stream);
  const auto intended = select_strongest(slot, m_sz);
  const ActivationState activation =
      apply_feedback_noise(intended, n_sz, zeta, stream);
  const SlotOutcome outcome = evaluate_slot(slot, activation, config.beta, config.n0,
                                            config.count_unexpected);

  std::vector<std::uint8_t> is_intended(n_sz, 0), is_active(n_sz, 0);
  std::vector<double> sinr(n_sz, 0.0);
  std::vector<std::uint8_t> has_sinr(n_sz, 0);
  for (const auto idx : activation.intended) is_intended[idx] = 1;
  for (const auto idx : activation.noisy) is_active[idx] = 1;
  for (const auto& [idx, value] : outcome.sinr) {
    sinr[idx] = value;
    has_sinr[idx] = 1;
  }

  std::string text =
      csv_line({"pair_index", "direct_gain", "intended", "active", "sinr", "success"});
  for (std::size_t i = 0; i < n_sz; ++i) {
    const bool ok = has_sinr[i] && sinr[i] >= config.beta &&
                    (config.count_unexpected || is_intended[i]);
    text += csv_line({format_u64(i), format_double(slot.direct_gains[i]),
                      format_u64(is_intended[i]), format_u64(is_active[i]),
                      has_sinr[i] ? format_double(sinr[i]) : std::string(),
                      format_u64(ok ? 1 : 0)});
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
    std::cerr << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-hop fading-network throughput simulator and feasibility solver"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  CommonFlags sweep_state, solve_state, tol_state, verify_state, slot_state;

  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo throughput sweep over the n grid");
  add_common_config_flags(sweep, &sweep_state);

  CLI::App* solve = app.add_subcommand("solve-m", "largest feasible activation size per n");
  add_common_config_flags(solve, &solve_state);

  CLI::App* tol = app.add_subcommand("tolerance",
                                     "noiseless achievable order and feedback-error threshold per n");
  add_common_config_flags(tol, &tol_state);

  CLI::App* verify = app.add_subcommand("verify", "statistical verification experiments");
  std::string verify_target;
  double super_zeta = 0.05;
  verify->add_option("target", verify_target,
                     "lemma1 | lemma2 | lemma3 | lemma4 | falk | corollary")
      ->required();
  verify->add_option("--super-zeta", super_zeta,
                     "constant super-threshold zeta for the corollary check");
  add_common_config_flags(verify, &verify_state);

  CLI::App* slot = app.add_subcommand("slot", "single-slot debug dump (per-pair CSV)");
  std::string slot_out;
  slot->add_option("--out", slot_out, "output file (default stdout)");
  add_common_config_flags(slot, &slot_state);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sweep->parsed()) return run_sweep(sweep_state);
    if (solve->parsed()) return run_solve_m(solve_state);
    if (tol->parsed()) return run_tolerance(tol_state);
    if (verify->parsed()) return run_verify(verify_state, verify_target, super_zeta);
    if (slot->parsed()) return run_slot_dump(slot_state, slot_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
