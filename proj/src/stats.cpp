#include "fadingnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fadingnet {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& reference_cdf) {
  if (sample.empty()) throw std::domain_error("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    const double f = reference_cdf(sample[j]);
    d = std::max(d, (static_cast<double>(j) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(j) / n);
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0) throw std::domain_error("ks_critical_value: n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("ks_critical_value: alpha must be in (0,1)");
  // asymptotic inversion of the Kolmogorov distribution's leading term
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c / std::sqrt(static_cast<double>(n));
}

namespace {

// log pmf of Binomial(n, p) at k, via lgamma.
double binomial_log_pmf(std::size_t n, double p, std::size_t k) {
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
         kd * std::log(p) + (nd - kd) * std::log1p(-p);
}

// Sum of pmf over [k_from, k_to], walking outward from k_from with the
// incremental ratio pmf(k+1)/pmf(k); terms fall off fast so the walk stops
// once they stop contributing.
double binomial_pmf_sum(std::size_t n, double p, std::size_t k_from,
                        std::size_t k_to) {
  if (k_from > k_to) return 0.0;
  double log_term = binomial_log_pmf(n, p, k_from);
  double term = std::exp(log_term);
  double acc = term;
  const double log_odds = std::log(p) - std::log1p(-p);
  for (std::size_t k = k_from; k < k_to; ++k) {
    log_term += std::log(static_cast<double>(n - k)) -
                std::log(static_cast<double>(k) + 1.0) + log_odds;
    term = std::exp(log_term);
    acc += term;
    if (term < acc * 1e-18 && static_cast<double>(k) > static_cast<double>(n) * p)
      break;
  }
  return std::min(acc, 1.0);
}

}  // namespace

double binomial_upper_tail(std::size_t n, double p, double t) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("binomial_upper_tail: p must be in [0,1]");
  if (t < 0.0) return 1.0;
  const auto k_min = static_cast<std::size_t>(std::floor(t)) + 1;  // X > t <=> X >= k_min
  if (k_min > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;  // X = n a.s. and k_min <= n
  return binomial_pmf_sum(n, p, k_min, n);
}

double binomial_lower_tail(std::size_t n, double p, double t) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("binomial_lower_tail: p must be in [0,1]");
  if (t <= 0.0) return 0.0;
  const double c = std::ceil(t);
  // X < t <=> X <= k_max with k_max = ceil(t)-1 (t integer) or floor(t)
  const auto k_max = static_cast<std::size_t>(c == t ? c - 1.0 : std::floor(t));
  if (k_max >= n) return 1.0;
  if (p == 0.0) return 1.0;  // X = 0 a.s. and t > 0
  if (p == 1.0) return 0.0;
  return binomial_pmf_sum(n, p, 0, k_max);
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::domain_error("least_squares: need matched x/y with >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw std::domain_error("least_squares: constant regressor");

  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy <= 0.0) {
    fit.r_squared = 1.0;  // constant response, fitted exactly
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  for (const double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double acc = 0.0;
  for (const double v : values) acc += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(acc / (static_cast<double>(values.size()) - 1.0));
  return s;
}

}  // namespace fadingnet
