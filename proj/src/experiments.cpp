#include "fadingnet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "fadingnet/simulation.hpp"

namespace fadingnet {

void ExperimentConfig::validate() const {
  if (n_grid.empty()) throw std::invalid_argument("config: n_grid must be nonempty");
  for (std::size_t j = 0; j < n_grid.size(); ++j) {
    if (n_grid[j] < 2) throw std::invalid_argument("config: all n must be >= 2");
    if (j > 0 && n_grid[j] <= n_grid[j - 1])
      throw std::invalid_argument("config: n_grid must be strictly ascending");
  }
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (!(beta >= 0.0)) throw std::invalid_argument("config: beta must be >= 0");
  if (!(n0 > 0.0)) throw std::invalid_argument("config: n0 must be > 0");
  params.validate();
  if (m_rule.kind == MRule::Kind::solver && !model.theorem_ready())
    throw std::invalid_argument("config: alpha must exceed 2 for the solver m rule");
  if (zeta_rule.kind == ZetaRule::Kind::constant &&
      (zeta_rule.value < 0.0 || zeta_rule.value > 1.0))
    throw std::invalid_argument("config: constant zeta must be in [0,1]");
  if (zeta_rule.kind == ZetaRule::Kind::scaled && zeta_rule.c < 0.0)
    throw std::invalid_argument("config: scaled zeta needs c >= 0");
  if (zeta_rule.kind == ZetaRule::Kind::scaled &&
      zeta_rule.shape == ZetaRule::Shape::power_n &&
      model.variant() != Fading::ParetoType)
    throw std::invalid_argument("config: power_n zeta shape requires the pareto model");
}

std::size_t resolve_m(const ExperimentConfig& config, std::size_t n) {
  TheoremParams p = config.params;
  p.beta = config.beta;
  switch (config.m_rule.kind) {
    case MRule::Kind::solver:
      return max_feasible_m(config.model, n, 0.0, p);
    case MRule::Kind::fixed:
      if (config.m_rule.fixed_m > n)
        throw std::domain_error("m rule: fixed m exceeds n");
      return config.m_rule.fixed_m;
    case MRule::Kind::c_log: {
      const auto m = std::llround(config.m_rule.c * std::log(static_cast<double>(n)));
      return std::min<std::size_t>(n, static_cast<std::size_t>(std::max<long long>(0, m)));
    }
    case MRule::Kind::c_power: {
      const auto m = std::llround(config.m_rule.c *
                                  std::pow(static_cast<double>(n), config.m_rule.exponent));
      return std::min<std::size_t>(n, static_cast<std::size_t>(std::max<long long>(0, m)));
    }
  }
  return 0;  // unreachable
}

double resolve_zeta(const ExperimentConfig& config, std::size_t n) {
  switch (config.zeta_rule.kind) {
    case ZetaRule::Kind::zero:
      return 0.0;
    case ZetaRule::Kind::constant:
      return config.zeta_rule.value;
    case ZetaRule::Kind::scaled: {
      const double nd = static_cast<double>(n);
      double z = 0.0;
      if (config.zeta_rule.shape == ZetaRule::Shape::log_n_over_n) {
        z = config.zeta_rule.c * std::log(nd) / nd;
      } else {
        const double a = config.model.alpha();
        z = config.zeta_rule.c * std::pow(nd, -a / (1.0 + a));
      }
      return std::clamp(z, 0.0, 1.0);
    }
  }
  return 0.0;  // unreachable
}

namespace {

unsigned worker_count(const ExperimentConfig& config, std::size_t count) {
  unsigned t = config.threads != 0 ? config.threads
                                   : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, count));
}

// Static stride partition; each index writes only its own slot, so results
// do not depend on scheduling.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

SweepRow summarize_point(std::size_t n, std::size_t m, double zeta,
                         const std::vector<std::uint32_t>& successes,
                         std::size_t all_ok_count) {
  SweepRow row;
  row.n = n;
  row.m_used = m;
  row.zeta_used = zeta;
  row.trials = successes.size();
  std::vector<double> values(successes.begin(), successes.end());
  const Summary s = summarize(values);
  row.mean_throughput = s.mean;
  row.sd_throughput = s.sd;
  row.p_all_intended_success =
      static_cast<double>(all_ok_count) / static_cast<double>(successes.size());
  return row;
}

}  // namespace

std::vector<SweepRow> run_throughput_sweep(
    const ExperimentConfig& config,
    std::vector<std::vector<std::uint32_t>>* raw_successes) {
  config.validate();
  if (raw_successes) raw_successes->clear();

  std::vector<SweepRow> rows;
  rows.reserve(config.n_grid.size());
  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const std::size_t n = config.n_grid[ni];
    const std::size_t m = resolve_m(config, n);
    if (m > n) throw std::domain_error("m rule produced m > n");
    const double zeta = resolve_zeta(config, n);

    std::vector<std::uint32_t> successes(config.trials, 0);
    std::vector<std::uint8_t> all_ok(config.trials, 0);
    parallel_for(config.trials, worker_count(config, config.trials), [&](std::size_t t) {
      Rng stream = Rng::derive(config.seed, kStreamSweep, ni, t);
      const SlotOutcome out =
          run_slot(config.model, n, m, zeta, config.beta, config.n0, stream,
                   config.count_unexpected);
      successes[t] = static_cast<std::uint32_t>(out.successes);
      all_ok[t] = out.all_intended_success ? 1 : 0;
    });

    const auto all_ok_count = static_cast<std::size_t>(
        std::count(all_ok.begin(), all_ok.end(), std::uint8_t{1}));
    rows.push_back(summarize_point(n, m, zeta, successes, all_ok_count));
    if (raw_successes) raw_successes->push_back(std::move(successes));
  }
  return rows;
}

namespace {

std::vector<double> to_doubles(std::span<const double> v) {
  return std::vector<double>(v.begin(), v.end());
}

void check_fit_input(std::span<const double> n_values,
                     std::span<const double> throughput) {
  if (n_values.size() != throughput.size() || n_values.size() < 3)
    throw std::domain_error("scaling fit: need >= 3 matched rows");
  for (const double n : n_values)
    if (!(n > 0.0)) throw std::domain_error("scaling fit: n must be positive");
}

}  // namespace

LinearFit fit_log_scaling(std::span<const double> n_values,
                          std::span<const double> throughput) {
  check_fit_input(n_values, throughput);
  std::vector<double> x = to_doubles(n_values);
  for (double& v : x) v = std::log(v);
  return least_squares(x, throughput);
}

LinearFit fit_log_scaling(const std::vector<SweepRow>& rows) {
  std::vector<double> n, y;
  for (const auto& r : rows) {
    n.push_back(static_cast<double>(r.n));
    y.push_back(r.mean_throughput);
  }
  return fit_log_scaling(n, y);
}

LinearFit fit_power_scaling(std::span<const double> n_values,
                            std::span<const double> throughput) {
  check_fit_input(n_values, throughput);
  std::vector<double> x = to_doubles(n_values);
  std::vector<double> y = to_doubles(throughput);
  for (double& v : x) v = std::log(v);
  for (double& v : y) {
    if (!(v > 0.0))
      throw std::domain_error("fit_power_scaling: throughput must be positive");
    v = std::log(v);
  }
  return least_squares(x, y);
}

LinearFit fit_power_scaling(const std::vector<SweepRow>& rows) {
  std::vector<double> n, y;
  for (const auto& r : rows) {
    n.push_back(static_cast<double>(r.n));
    y.push_back(r.mean_throughput);
  }
  return fit_power_scaling(n, y);
}

VerifierReport verify_error_concentration(const ExperimentConfig& config,
                                          ErrorKind kind) {
  config.validate();
  VerifierReport report;
  const char* tag = kind == ErrorKind::first ? "e1" : "e2";

  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const std::size_t n = config.n_grid[ni];
    const std::size_t m = resolve_m(config, n);
    const double zeta = resolve_zeta(config, n);
    const std::size_t base = kind == ErrorKind::first ? m : n - m;
    const double expected = zeta * static_cast<double>(base);
    const double hi = (1.0 + config.params.delta3) * expected;
    const double lo = (1.0 - config.params.delta3) * expected;

    // Flip errors are independent of the channel draw, so the slot's gain
    // stage is skipped; the feedback stage runs as in a full slot.
    std::vector<std::uint32_t> intended(m);
    std::iota(intended.begin(), intended.end(), 0u);

    std::vector<std::uint8_t> above(config.trials, 0), below(config.trials, 0);
    parallel_for(config.trials, worker_count(config, config.trials), [&](std::size_t t) {
      Rng stream = Rng::derive(config.seed, kStreamConcentration, ni, t);
      const ActivationState st = apply_feedback_noise(intended, n, zeta, stream);
      const auto e = static_cast<double>(kind == ErrorKind::first ? st.e1 : st.e2);
      above[t] = e > hi ? 1 : 0;
      below[t] = e < lo ? 1 : 0;
    });

    const double trials = static_cast<double>(config.trials);
    const double emp_hi = std::count(above.begin(), above.end(), 1) / trials;
    const double emp_lo = std::count(below.begin(), below.end(), 1) / trials;
    // zeta = 0 degenerates: both tails are exactly 0 and the bound is vacuous
    const double chernoff =
        base == 0 ? 1.0 : first_kind_tail_bound(zeta, base, config.params.delta3);
    const double exact_hi = binomial_upper_tail(base, zeta, hi);
    const double exact_lo = binomial_lower_tail(base, zeta, lo);

    report.push_back({n, std::string(tag) + "_upper_empirical", emp_hi, chernoff});
    report.push_back({n, std::string(tag) + "_upper_exact", exact_hi, chernoff});
    report.push_back({n, std::string(tag) + "_lower_empirical", emp_lo, exact_lo});
  }
  return report;
}

VerifierReport verify_direct_power(const ExperimentConfig& config) {
  config.validate();
  VerifierReport report;
  const double mu = mean(config.model);

  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const std::size_t n = config.n_grid[ni];
    const std::size_t m = resolve_m(config, n);
    const double zeta = resolve_zeta(config, n);
    const double l = static_cast<double>(m) +
                     (1.0 + config.params.delta2) * zeta * static_cast<double>(n - m);
    const double phi = config.params.k_const * mu * l;
    const double cut = config.beta * phi;

    std::vector<std::uint8_t> ok(config.trials, 0);
    parallel_for(config.trials, worker_count(config, config.trials), [&](std::size_t t) {
      Rng stream = Rng::derive(config.seed, kStreamDirectPower, ni, t);
      std::vector<double> gains(n);
      for (auto& g : gains) g = sample(config.model, stream);
      if (m == 0) {
        ok[t] = 1;
        return;
      }
      std::nth_element(gains.begin(), gains.begin() + (n - m), gains.end());
      ok[t] = gains[n - m] > cut ? 1 : 0;  // weakest of the m strongest
    });

    const double freq = std::count(ok.begin(), ok.end(), 1) /
                        static_cast<double>(config.trials);
    report.push_back({n, "direct_power_joint_freq", freq, 1.0});
  }
  return report;
}

VerifierReport verify_interference(const ExperimentConfig& config) {
  config.validate();
  VerifierReport report;
  const double mu = mean(config.model);

  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const std::size_t n = config.n_grid[ni];
    const std::size_t m = resolve_m(config, n);
    const double zeta = resolve_zeta(config, n);
    const double l = static_cast<double>(m) +
                     (1.0 + config.params.delta2) * zeta * static_cast<double>(n - m);
    const double phi = config.params.k_const * mu * l;

    std::vector<std::uint8_t> ok(config.trials, 0);
    parallel_for(config.trials, worker_count(config, config.trials), [&](std::size_t t) {
      Rng stream = Rng::derive(config.seed, kStreamInterference, ni, t);
      const SlotOutcome out = run_slot(config.model, n, m, zeta, config.beta,
                                       config.n0, stream, config.count_unexpected);
      ok[t] = out.max_active_interference <= phi ? 1 : 0;
    });

    const double freq = std::count(ok.begin(), ok.end(), 1) /
                        static_cast<double>(config.trials);
    report.push_back({n, "interference_joint_freq", freq, 1.0});
  }
  return report;
}

VerifierReport verify_falk_normality(
    const ExperimentConfig& config,
    const std::function<std::size_t(std::size_t)>& i_rule) {
  config.validate();
  VerifierReport report;

  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const std::size_t n = config.n_grid[ni];
    const std::size_t i =
        i_rule ? i_rule(n)
               : static_cast<std::size_t>(
                     std::ceil(std::sqrt(static_cast<double>(n))));
    if (i < 1 || i > n)
      throw std::domain_error("verify_falk_normality: i_rule out of range");
    const FalkConstants fc = falk_constants(config.model, n, i);

    std::vector<double> z(config.trials, 0.0);
    parallel_for(config.trials, worker_count(config, config.trials), [&](std::size_t t) {
      Rng stream = Rng::derive(config.seed, kStreamFalk, ni, t);
      std::vector<double> gains(n);
      for (auto& g : gains) g = sample(config.model, stream);
      // (n-i+1)-th order statistic ascending = i-th largest
      std::nth_element(gains.begin(), gains.begin() + (n - i), gains.end());
      z[t] = (gains[n - i] - fc.a) / fc.b;
    });

    const double d = ks_statistic(std::move(z), normal_cdf);
    report.push_back({n, "falk_ks_distance", d, 0.05});
  }
  return report;
}

VerifierReport verify_tolerance(const ExperimentConfig& config, double super_zeta) {
  config.validate();
  if (super_zeta < 0.0 || super_zeta > 1.0)
    throw std::domain_error("verify_tolerance: super_zeta must be in [0,1]");
  VerifierReport report;

  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const std::size_t n = config.n_grid[ni];
    const std::size_t m = resolve_m(config, n);
    const double zeta_arms[3] = {0.0, resolve_zeta(config, n), super_zeta};

    // Arms share per-trial substreams (a slot consumes the same draw count
    // for any zeta), so paired ratios compare like against like and the
    // zeta = 0 vs zeta = 0 ratio is exactly 1.
    double mean_t[3] = {0.0, 0.0, 0.0};
    double p_all[3] = {0.0, 0.0, 0.0};
    for (std::size_t arm = 0; arm < 3; ++arm) {
      std::vector<std::uint32_t> successes(config.trials, 0);
      std::vector<std::uint8_t> all_ok(config.trials, 0);
      parallel_for(config.trials, worker_count(config, config.trials), [&](std::size_t t) {
        Rng stream = Rng::derive(config.seed, kStreamTolerance, ni, t);
        const SlotOutcome out =
            run_slot(config.model, n, m, zeta_arms[arm], config.beta, config.n0,
                     stream, config.count_unexpected);
        successes[t] = static_cast<std::uint32_t>(out.successes);
        all_ok[t] = out.all_intended_success ? 1 : 0;
      });
      const double trials = static_cast<double>(config.trials);
      mean_t[arm] =
          std::accumulate(successes.begin(), successes.end(), 0.0) / trials;
      p_all[arm] = std::count(all_ok.begin(), all_ok.end(), 1) / trials;
    }

    const double t_ratio = mean_t[0] > 0.0 ? mean_t[1] / mean_t[0] : 1.0;
    const double p_ratio = p_all[1] > 0.0 ? p_all[2] / p_all[1] : 0.0;
    report.push_back({n, "throughput_ratio_sub_vs_zero", t_ratio, 1.0});
    report.push_back({n, "p_all_zero", p_all[0], 1.0});
    report.push_back({n, "p_all_sub", p_all[1], 1.0});
    report.push_back({n, "p_all_super", p_all[2], 0.0});
    report.push_back({n, "p_all_super_over_sub", p_ratio, 0.0});
  }
  return report;
}

}  // namespace fadingnet
