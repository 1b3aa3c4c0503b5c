#include "fadingnet/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace fadingnet {

void TheoremParams::validate() const {
  if (!(beta > 0.0)) throw std::invalid_argument("params: beta must be > 0");
  if (!(k_const > 1.0)) throw std::invalid_argument("params: K must be > 1");
  for (const double d : {delta1, delta2, delta3})
    if (!(d >= 0.0 && d < 1.0))
      throw std::invalid_argument("params: deltas must lie in [0,1)");
  if (m_min < 1) throw std::invalid_argument("params: m_min must be >= 1");
}

namespace {

void require_theorem_model(const ChannelModel& model) {
  if (!model.theorem_ready())
    throw std::domain_error("theorem machinery requires alpha > 2 for the ParetoType model");
}

}  // namespace

FeasibilityReport theorem_margin(const ChannelModel& model, std::size_t n,
                                 std::size_t m, double zeta,
                                 const TheoremParams& params) {
  params.validate();
  require_theorem_model(model);
  if (m < 1 || m > n) throw std::domain_error("theorem_margin: need 1 <= m <= n");
  if (zeta < 0.0 || zeta > 1.0)
    throw std::domain_error("theorem_margin: zeta must be in [0,1]");

  const double mu = mean(model);
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);

  FeasibilityReport report;
  report.lhs = (1.0 - params.delta1) * quantile(model, 1.0 - md / nd);
  report.l_value = md + (1.0 + params.delta2) * zeta * (nd - md);
  report.phi = params.k_const * mu * report.l_value;
  report.rhs = params.beta * report.phi;
  report.feasible = report.lhs > report.rhs;
  return report;
}

namespace {

std::size_t scan_largest_feasible(const ChannelModel& model, std::size_t n,
                                  double zeta, const TheoremParams& params) {
  std::size_t best = 0;
  for (std::size_t m = params.m_min; m <= n; ++m)
    if (theorem_margin(model, n, m, zeta, params).feasible) best = m;
  return best;
}

}  // namespace

std::size_t max_feasible_m(const ChannelModel& model, std::size_t n,
                           double zeta, const TheoremParams& params) {
  params.validate();
  require_theorem_model(model);
  if (n < params.m_min) return 0;

  // rhs is increasing in m only when (1+d2) zeta < 1; outside that regime
  // the predicate need not be monotone, so fall back to the scan.
  if (!((1.0 + params.delta2) * zeta < 1.0))
    return scan_largest_feasible(model, n, zeta, params);

  const auto feasible = [&](std::size_t m) {
    return theorem_margin(model, n, m, zeta, params).feasible;
  };
  if (!feasible(params.m_min)) return 0;
  std::size_t lo = params.m_min;  // feasible
  std::size_t hi = n;             // first candidate for infeasible
  if (feasible(hi)) return hi;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::size_t max_feasible_m_scan(const ChannelModel& model, std::size_t n,
                                double zeta, const TheoremParams& params) {
  params.validate();
  require_theorem_model(model);
  if (n < params.m_min) return 0;
  return scan_largest_feasible(model, n, zeta, params);
}

FalkConstants falk_constants(const ChannelModel& model, std::size_t n,
                             std::size_t i) {
  if (i < 1 || i > n) throw std::domain_error("falk_constants: need 1 <= i <= n");
  FalkConstants c;
  c.a = quantile(model, 1.0 - static_cast<double>(i) / static_cast<double>(n));
  const double density = pdf(model, c.a);
  if (!(density > 0.0))
    throw std::domain_error("falk_constants: pdf degenerate at the centering point");
  c.b = std::sqrt(static_cast<double>(i)) / (static_cast<double>(n) * density);
  return c;
}

double chernoff_exponent(double delta3) {
  if (!(delta3 > 0.0)) throw std::domain_error("chernoff_exponent: delta3 must be > 0");
  return (1.0 + delta3) * std::log1p(delta3) - delta3;
}

double first_kind_tail_bound(double zeta, std::size_t m, double delta3) {
  if (zeta < 0.0 || zeta > 1.0)
    throw std::domain_error("first_kind_tail_bound: zeta must be in [0,1]");
  if (m < 1) throw std::domain_error("first_kind_tail_bound: m must be >= 1");
  return std::exp(-zeta * static_cast<double>(m) * chernoff_exponent(delta3));
}

std::vector<TolerancePoint> corollary_tolerance(const ChannelModel& model,
                                                std::span<const std::size_t> n_grid,
                                                const TheoremParams& params) {
  if (n_grid.empty()) throw std::invalid_argument("corollary_tolerance: empty n grid");
  for (std::size_t j = 1; j < n_grid.size(); ++j)
    if (n_grid[j] <= n_grid[j - 1])
      throw std::invalid_argument("corollary_tolerance: n grid must ascend");

  std::vector<TolerancePoint> points;
  points.reserve(n_grid.size());
  for (const std::size_t n : n_grid) {
    TolerancePoint p;
    p.n = n;
    p.t_n = max_feasible_m(model, n, 0.0, params);
    p.zeta_threshold = static_cast<double>(p.t_n) / static_cast<double>(n);
    points.push_back(p);
  }
  return points;
}

bool corollary_transfer_check(const ChannelModel& model, std::size_t n,
                              const TheoremParams& params, double c1,
                              double zeta_scale) {
  if (!(c1 > 0.0 && c1 <= 1.0))
    throw std::domain_error("corollary_transfer_check: c1 must be in (0,1]");
  if (!(zeta_scale >= 0.0))
    throw std::domain_error("corollary_transfer_check: zeta_scale must be >= 0");
  const std::size_t t = max_feasible_m(model, n, 0.0, params);
  if (t == 0) return false;
  const auto m = static_cast<std::size_t>(
      std::max<long long>(1, std::llround(c1 * static_cast<double>(t))));
  double zeta = zeta_scale * static_cast<double>(t) / static_cast<double>(n);
  if (zeta > 1.0) zeta = 1.0;
  return theorem_margin(model, n, m, zeta, params).feasible;
}

}  // namespace fadingnet
