#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fadingnet/asymptotics.hpp"
#include "fadingnet/distributions.hpp"
#include "fadingnet/stats.hpp"

namespace fadingnet {

struct MRule {
  enum class Kind { solver, fixed, c_log, c_power };
  Kind kind = Kind::solver;
  std::size_t fixed_m = 0;  // fixed
  double c = 0.0;           // c_log, c_power
  double exponent = 0.0;    // c_power

  bool operator==(const MRule&) const = default;
};

struct ZetaRule {
  enum class Kind { zero, constant, scaled };
  enum class Shape { log_n_over_n, power_n };
  Kind kind = Kind::zero;
  double value = 0.0;  // constant
  double c = 0.0;      // scaled
  Shape shape = Shape::log_n_over_n;

  bool operator==(const ZetaRule&) const = default;
};

struct ExperimentConfig {
  ChannelModel model = ChannelModel::rayleigh_power(1.0);
  std::vector<std::size_t> n_grid;
  std::size_t trials = 1;
  MRule m_rule;
  ZetaRule zeta_rule;
  double beta = 1.0;
  double n0 = 1.0;
  TheoremParams params;
  std::uint64_t seed = 1;
  bool count_unexpected = true;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// m for one grid point. The solver rule sizes the activation set at the
// noiseless achievable order (zeta = 0), so noisy and noiseless runs of the
// same config compare at matched m.
std::size_t resolve_m(const ExperimentConfig& config, std::size_t n);
double resolve_zeta(const ExperimentConfig& config, std::size_t n);

struct SweepRow {
  std::size_t n = 0;
  std::size_t m_used = 0;
  double zeta_used = 0.0;
  std::size_t trials = 0;
  double mean_throughput = 0.0;
  double sd_throughput = 0.0;
  double p_all_intended_success = 0.0;
};

struct ScalingResult {
  enum class FitKind { none, log, power };
  std::vector<SweepRow> rows;
  FitKind fit_kind = FitKind::none;
  LinearFit fit;
};

// Monte Carlo throughput sweep over the n grid. Trials fan out across
// workers; per-trial results land in index order, so output is identical
// for any worker count. raw_successes, when given, receives the per-trial
// success counts per grid point.
std::vector<SweepRow> run_throughput_sweep(
    const ExperimentConfig& config,
    std::vector<std::vector<std::uint32_t>>* raw_successes = nullptr);

// OLS of throughput against ln n.
LinearFit fit_log_scaling(std::span<const double> n_values,
                          std::span<const double> throughput);
LinearFit fit_log_scaling(const std::vector<SweepRow>& rows);

// OLS of ln throughput against ln n; the slope estimates the power-law
// exponent. Throws on nonpositive throughput.
LinearFit fit_power_scaling(std::span<const double> n_values,
                            std::span<const double> throughput);
LinearFit fit_power_scaling(const std::vector<SweepRow>& rows);

struct VerifierRow {
  std::size_t n = 0;
  std::string statistic;
  double empirical = 0.0;
  double bound_or_target = 0.0;
};

using VerifierReport = std::vector<VerifierRow>;

enum class ErrorKind { first, second };

// Lemma-level concentration of the feedback error counts: empirical tails
// of E1 (or E2) against the Chernoff bound and the exact binomial tails.
VerifierReport verify_error_concentration(const ExperimentConfig& config,
                                          ErrorKind kind);

// Joint event {all m strongest direct gains > beta phi}.
VerifierReport verify_direct_power(const ExperimentConfig& config);

// Joint event {I_i <= phi at every active receiver}, I_i the realized
// interference sum (noise excluded).
VerifierReport verify_interference(const ExperimentConfig& config);

// Standardized intermediate order statistic (X_(n-i+1) - a_n)/b_n against
// N(0,1) by KS distance. i_rule defaults to ceil(sqrt(n)).
VerifierReport verify_falk_normality(
    const ExperimentConfig& config,
    const std::function<std::size_t(std::size_t)>& i_rule = nullptr);

// Paired sweeps at zeta = 0, the config's (sub-threshold) zeta rule, and a
// constant super-threshold zeta; reports noisy/noiseless ratios.
VerifierReport verify_tolerance(const ExperimentConfig& config,
                                double super_zeta = 0.05);

}  // namespace fadingnet
