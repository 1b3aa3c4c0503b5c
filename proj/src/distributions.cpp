#include "fadingnet/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace fadingnet {

namespace {
constexpr double kQuantileCap = 1.0 - 1e-15;
}

ChannelModel ChannelModel::rayleigh_power(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("rayleigh_power: mu must be > 0");
  return ChannelModel(Fading::RayleighPower, mu);
}

ChannelModel ChannelModel::pareto_type(double alpha) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("pareto_type: alpha must be > 1 for a finite mean");
  return ChannelModel(Fading::ParetoType, alpha);
}

double ChannelModel::mu() const {
  if (variant_ != Fading::RayleighPower)
    throw std::logic_error("mu() is only defined for the RayleighPower variant");
  return param_;
}

double ChannelModel::alpha() const {
  if (variant_ != Fading::ParetoType)
    throw std::logic_error("alpha() is only defined for the ParetoType variant");
  return param_;
}

bool ChannelModel::theorem_ready() const {
  return variant_ == Fading::RayleighPower || param_ > 2.0;
}

double cdf(const ChannelModel& model, double x) {
  if (x < 0.0) throw std::domain_error("cdf: x must be >= 0");
  switch (model.variant()) {
    case Fading::RayleighPower:
      return -std::expm1(-x / model.mu());
    case Fading::ParetoType:
      return 1.0 - std::pow(1.0 + x, -model.alpha());
  }
  return 0.0;  // unreachable
}

double pdf(const ChannelModel& model, double x) {
  if (x < 0.0) throw std::domain_error("pdf: x must be >= 0");
  switch (model.variant()) {
    case Fading::RayleighPower:
      return std::exp(-x / model.mu()) / model.mu();
    case Fading::ParetoType:
      return model.alpha() * std::pow(1.0 + x, -(model.alpha() + 1.0));
  }
  return 0.0;  // unreachable
}

double quantile(const ChannelModel& model, double p) {
  if (p < 0.0 || p >= 1.0) throw std::domain_error("quantile: p must be in [0,1)");
  if (p > kQuantileCap) p = kQuantileCap;
  switch (model.variant()) {
    case Fading::RayleighPower:
      return -model.mu() * std::log1p(-p);
    case Fading::ParetoType:
      return std::pow(1.0 - p, -1.0 / model.alpha()) - 1.0;
  }
  return 0.0;  // unreachable
}

double mean(const ChannelModel& model) {
  switch (model.variant()) {
    case Fading::RayleighPower:
      return model.mu();
    case Fading::ParetoType:
      return 1.0 / (model.alpha() - 1.0);
  }
  return 0.0;  // unreachable
}

double sample(const ChannelModel& model, Rng& stream) {
  return quantile(model, stream.uniform01());
}

double quantile_by_bisection(const std::function<double(double)>& cdf_fn,
                             double p, double rel_tol) {
  if (p < 0.0 || p >= 1.0)
    throw std::domain_error("quantile_by_bisection: p must be in [0,1)");
  if (p > kQuantileCap) p = kQuantileCap;
  if (cdf_fn(0.0) >= p) return 0.0;

  double hi = 1.0;
  while (cdf_fn(hi) < p) {
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("quantile_by_bisection: bracket overflow");
  }
  double lo = hi * 0.5 < 1.0 ? 0.0 : hi * 0.5;
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (cdf_fn(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fadingnet
