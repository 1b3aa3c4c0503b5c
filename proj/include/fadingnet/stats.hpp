#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fadingnet {

// Standard normal CDF, absolute error well below 1e-7.
double normal_cdf(double x);

// One-sample Kolmogorov-Smirnov distance between a sample and a reference
// CDF: sup_x |F_hat(x) - F(x)|. Takes the sample by value (it is sorted).
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& reference_cdf);

// Asymptotic critical value c(alpha)/sqrt(n); alpha in {0.01, 0.05, 0.10}.
double ks_critical_value(std::size_t n, double alpha = 0.01);

// Exact binomial tails for X ~ Binomial(n, p), real-valued thresholds:
// Pr{X > t} and Pr{X < t}.
double binomial_upper_tail(std::size_t n, double p, double t);
double binomial_lower_tail(std::size_t n, double p, double t);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares of y on x. Throws std::domain_error when the
// regressor is (numerically) constant. A constant response fits exactly:
// slope 0, r^2 = 1.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n-1); 0 for n < 2
};

Summary summarize(std::span<const double> values);

}  // namespace fadingnet
