#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fadingnet/distributions.hpp"

namespace fadingnet {

struct TheoremParams {
  double beta = 1.0;     // SINR threshold
  double k_const = 1.5;  // interference headroom, > 1
  double delta1 = 0.05;
  double delta2 = 0.05;
  double delta3 = 0.05;
  std::size_t m_min = 1;

  void validate() const;

  bool operator==(const TheoremParams&) const = default;
};

// Both sides of the feasibility inequality
//   (1-d1) F^-1(1 - m/n) > beta K mu (m + (1+d2) zeta (n-m))
// together with the effective interferer count l and the interference cap
// phi = K mu l.
struct FeasibilityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double l_value = 0.0;
  double phi = 0.0;
  bool feasible = false;
};

FeasibilityReport theorem_margin(const ChannelModel& model, std::size_t n,
                                 std::size_t m, double zeta,
                                 const TheoremParams& params);

// Largest m in [m_min, n] with a feasible margin; 0 when even m_min fails.
// Binary search on the monotone predicate when (1+d2) zeta < 1 (lhs strictly
// decreasing in m, rhs strictly increasing), linear scan otherwise.
std::size_t max_feasible_m(const ChannelModel& model, std::size_t n,
                           double zeta, const TheoremParams& params);

// Exhaustive reference: largest feasible m by scanning every candidate.
std::size_t max_feasible_m_scan(const ChannelModel& model, std::size_t n,
                                double zeta, const TheoremParams& params);

struct FalkConstants {
  double a = 0.0;  // F^-1(1 - i/n)
  double b = 0.0;  // sqrt(i) / (n f(a))
};

// Normalization pair for the (n-i+1)-th order statistic of n i.i.d. draws.
FalkConstants falk_constants(const ChannelModel& model, std::size_t n,
                             std::size_t i);

// Lambda(x) = (1+x) log(1+x) - x, the exponent of the binomial Chernoff
// bound; strictly positive for x > 0.
double chernoff_exponent(double delta3);

// exp(-zeta m Lambda(d3)), an upper bound on Pr{E > (1+d3) zeta m} for
// E ~ Binomial(m, zeta). The same form covers second-kind errors with
// n-m in place of m.
double first_kind_tail_bound(double zeta, std::size_t m, double delta3);

struct TolerancePoint {
  std::size_t n = 0;
  std::size_t t_n = 0;            // noiseless achievable order
  double zeta_threshold = 0.0;    // t_n / n
};

// Per n: the noiseless max feasible m and the feedback-error scale below
// which no throughput order is lost.
std::vector<TolerancePoint> corollary_tolerance(const ChannelModel& model,
                                                std::span<const std::size_t> n_grid,
                                                const TheoremParams& params);

// With T the noiseless max feasible m, checks that m = c1 T stays feasible
// under zeta = zeta_scale * T / n.
bool corollary_transfer_check(const ChannelModel& model, std::size_t n,
                              const TheoremParams& params, double c1,
                              double zeta_scale = 0.1);

}  // namespace fadingnet
