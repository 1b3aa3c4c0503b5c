#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "fadingnet/config.hpp"
#include "fadingnet/manifest.hpp"
#include "fadingnet/version.hpp"

using namespace fadingnet;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("minimal config fills documented defaults") {
  const auto kv = read_key_value_text(
      "dist = rayleigh\nmu = 1\nn_grid = 1000\ntrials = 10\nseed = 7\n");
  const ExperimentConfig config = build_config(kv, {});
  CHECK(config.model == ChannelModel::rayleigh_power(1.0));
  CHECK(config.n_grid == std::vector<std::size_t>{1000});
  CHECK(config.trials == 10);
  CHECK(config.seed == 7);
  CHECK(config.beta == 1.0);
  CHECK(config.n0 == 1.0);
  CHECK(config.params.k_const == 1.5);
  CHECK(config.params.delta1 == 0.05);
  CHECK(config.params.delta2 == 0.05);
  CHECK(config.params.delta3 == 0.05);
  CHECK(config.params.m_min == 1);
  CHECK(config.m_rule.kind == MRule::Kind::solver);
  CHECK(config.zeta_rule.kind == ZetaRule::Kind::zero);
  CHECK(config.count_unexpected == true);
}

TEST_CASE("comments, spacing, and lists parse") {
  const auto kv = read_key_value_text(
      "# run shape\n"
      "dist = pareto   # heavy tail\n"
      "alpha = 2.5\n"
      "n_grid = 1000, 2000,4000\n"
      "trials = 5\n"
      "m_rule = c_power:0.5,0.25\n"
      "zeta_rule = scaled:0.1,power_n\n");
  const ExperimentConfig config = build_config(kv, {});
  CHECK(config.model == ChannelModel::pareto_type(2.5));
  CHECK(config.n_grid == std::vector<std::size_t>{1000, 2000, 4000});
  CHECK(config.m_rule.kind == MRule::Kind::c_power);
  CHECK(config.m_rule.c == 0.5);
  CHECK(config.m_rule.exponent == 0.25);
  CHECK(config.zeta_rule.kind == ZetaRule::Kind::scaled);
  CHECK(config.zeta_rule.shape == ZetaRule::Shape::power_n);
}

TEST_CASE("the documented rejections name their key") {
  const auto base = read_key_value_text(
      "dist = rayleigh\nmu = 1\nn_grid = 1000\ntrials = 10\n");

  SUBCASE("alpha at or below 2 cannot drive the solver") {
    const auto kv = read_key_value_text(
        "dist = pareto\nalpha = 1.5\nn_grid = 1000\ntrials = 10\n");
    try {
      build_config(kv, {});
      FAIL("expected rejection");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("alpha must exceed 2") != std::string::npos);
      CHECK(e.key() == "alpha");
    }
  }

  SUBCASE("unknown keys are named") {
    auto kv = base;
    kv["n_gird"] = "100";
    try {
      build_config(kv, {});
      FAIL("expected rejection");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("n_gird") != std::string::npos);
    }
  }

  SUBCASE("missing required keys") {
    CHECK_THROWS_AS(build_config(read_key_value_text("mu = 1\n"), {}), ConfigError);
    CHECK_THROWS_AS(build_config(read_key_value_text("dist = rayleigh\n"), {}),
                    ConfigError);
  }

  SUBCASE("cross-variant parameters are rejected") {
    auto kv = base;
    kv["alpha"] = "3";
    CHECK_THROWS_AS(build_config(kv, {}), ConfigError);
  }

  SUBCASE("malformed values") {
    auto kv = base;
    kv["trials"] = "ten";
    CHECK_THROWS_AS(build_config(kv, {}), ConfigError);
    kv = base;
    kv["n_grid"] = "1000,,2000";
    CHECK_THROWS_AS(build_config(kv, {}), ConfigError);
    kv = base;
    kv["count_unexpected"] = "yes";
    CHECK_THROWS_AS(build_config(kv, {}), ConfigError);
    kv = base;
    kv["zeta_rule"] = "scaled:0.1";
    CHECK_THROWS_AS(build_config(kv, {}), ConfigError);
  }

  SUBCASE("config text must be key = value") {
    CHECK_THROWS_AS(read_key_value_text("dist rayleigh\n"), ConfigError);
  }
}

TEST_CASE("flags override file values") {
  const auto file = read_key_value_text(
      "dist = rayleigh\nmu = 1\nn_grid = 1000\ntrials = 10\nzeta_rule = zero\nseed = 3\n");
  const auto flags = read_key_value_text("zeta_rule = constant:0.01\nseed = 9\n");
  const ExperimentConfig config = build_config(file, flags);
  CHECK(config.zeta_rule.kind == ZetaRule::Kind::constant);
  CHECK(config.zeta_rule.value == 0.01);
  CHECK(config.seed == 9);
}

TEST_CASE("FADINGNET_SEED is the lowest-precedence seed source") {
  const auto no_seed = read_key_value_text(
      "dist = rayleigh\nmu = 1\nn_grid = 1000\ntrials = 10\n");

  setenv("FADINGNET_SEED", "4242", 1);
  CHECK(build_config(no_seed, {}).seed == 4242);

  auto with_seed = no_seed;
  with_seed["seed"] = "11";
  CHECK(build_config(with_seed, {}).seed == 11);
  CHECK(build_config(no_seed, {{"seed", "12"}}).seed == 12);
  unsetenv("FADINGNET_SEED");

  CHECK(build_config(no_seed, {}).seed == 1);  // built-in default
}

TEST_CASE("config round-trips through its flat representation") {
  for (const std::string text :
       {std::string("dist = rayleigh\nmu = 2.5\nn_grid = 100,200\ntrials = 3\n"
                    "m_rule = c_log:0.5\nzeta_rule = scaled:0.1,log_n_over_n\n"
                    "beta = 0.5\nn0 = 2\nk = 2.25\ndelta1 = 0\ndelta2 = 0.1\n"
                    "delta3 = 0.2\nm_min = 2\nseed = 99\ncount_unexpected = off\n"
                    "threads = 4\n"),
        std::string("dist = pareto\nalpha = 3\nn_grid = 64\ntrials = 1\n"
                    "m_rule = fixed:5\nzeta_rule = constant:0.25\n")}) {
    const ExperimentConfig config = build_config(read_key_value_text(text), {});
    const ExperimentConfig reparsed =
        build_config(read_key_value_text(config_to_text(config)), {});
    CHECK(reparsed == config);
  }
}

TEST_CASE("manifest digests match the written files") {
  const std::string f1 = temp_path("fadingnet_test_a.csv");
  const std::string f2 = temp_path("fadingnet_test_b.csv");
  {
    std::ofstream(f1) << "n,zeta\n1,0\n";
    std::ofstream(f2) << "other\n";
  }
  CHECK(file_digest_hex(f1) != file_digest_hex(f2));
  CHECK(file_digest_hex(f1).size() == 16);

  RunManifest manifest;
  manifest.config = build_config(
      read_key_value_text("dist = rayleigh\nmu = 1\nn_grid = 1000\ntrials = 10\nseed = 7\n"),
      {});
  manifest.seed = manifest.config.seed;
  manifest.tool_version = tool_version();
  manifest.started_at = utc_timestamp_now();
  manifest.wall_seconds = 0.25;
  manifest.output_files.push_back({f1, file_digest_hex(f1)});

  const std::string mpath = temp_path("fadingnet_test_manifest.json");
  write_manifest(mpath, manifest);

  // the manifest re-reads as JSON and its digest entry still matches the file
  std::ifstream in(mpath);
  std::string blob((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(blob.find(file_digest_hex(f1)) != std::string::npos);
  CHECK(blob.find("\"tool_version\": \"fadingnet 0.1.0\"") != std::string::npos);
  CHECK(blob.find("\"seed\": 7") != std::string::npos);

  std::remove(f1.c_str());
  std::remove(f2.c_str());
  std::remove(mpath.c_str());
}
