#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "fadingnet/asymptotics.hpp"
#include "fadingnet/stats.hpp"

using namespace fadingnet;

namespace {

// Test-side binomial oracle: regularized incomplete beta via the textbook
// continued fraction, a different route than the library's pmf summation.
double incomplete_beta_cf(double x, double a, double b) {
  const double tiny = 1e-300;
  auto numer = [&](int j) -> double {
    if (j == 0) return 1.0;
    if (j % 2 == 0) {
      const double m = j / 2;
      return m * (b - m) * x / ((a + 2 * m - 1) * (a + 2 * m));
    }
    const double m = (j - 1) / 2;
    return -(a + m) * (a + b + m) * x / ((a + 2 * m) * (a + 2 * m + 1));
  };
  double c = 1.0, d = 0.0, f = 1.0;
  for (int j = 1; j < 400; ++j) {
    const double an = numer(j);
    d = 1.0 + an * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double mult = c * d;
    f *= mult;
    if (std::abs(mult - 1.0) < 1e-15) break;
  }
  return f;
}

double regularized_incomplete_beta(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta);
  if (x < (a + 1.0) / (a + b + 2.0)) return front / (a * incomplete_beta_cf(x, a, b));
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta) /
                   (b * incomplete_beta_cf(1.0 - x, b, a));
}

// Pr{X > k} for X ~ Binomial(n, p), integer k, via I_p(k+1, n-k).
double binomial_tail_oracle(std::size_t n, double p, std::size_t k) {
  if (k >= n) return 0.0;
  return regularized_incomplete_beta(p, static_cast<double>(k) + 1.0,
                                     static_cast<double>(n - k));
}

TheoremParams sharp_params() {
  TheoremParams p;
  p.beta = 1.0;
  p.k_const = 1.5;
  p.delta1 = 0.0;
  p.delta2 = 0.0;
  p.delta3 = 0.05;
  return p;
}

const ChannelModel kRayleigh = ChannelModel::rayleigh_power(1.0);

}  // namespace

TEST_CASE("theorem_margin hand-checked instance") {
  const auto params = sharp_params();
  const auto at5 = theorem_margin(kRayleigh, 10000, 5, 0.0, params);
  CHECK(at5.lhs == doctest::Approx(7.600902459542082).epsilon(1e-12));
  CHECK(at5.rhs == doctest::Approx(7.5).epsilon(1e-12));
  CHECK(at5.l_value == doctest::Approx(5.0));
  CHECK(at5.phi == doctest::Approx(7.5));
  CHECK(at5.feasible);

  const auto at6 = theorem_margin(kRayleigh, 10000, 6, 0.0, params);
  CHECK(at6.lhs == doctest::Approx(7.418580902748128).epsilon(1e-12));
  CHECK(at6.rhs == doctest::Approx(9.0).epsilon(1e-12));
  CHECK_FALSE(at6.feasible);
}

TEST_CASE("theorem_margin rejects out-of-contract inputs") {
  const auto params = sharp_params();
  CHECK_THROWS_AS(theorem_margin(kRayleigh, 100, 0, 0.0, params), std::domain_error);
  CHECK_THROWS_AS(theorem_margin(kRayleigh, 100, 101, 0.0, params), std::domain_error);
  CHECK_THROWS_AS(theorem_margin(kRayleigh, 100, 5, -0.1, params), std::domain_error);
  CHECK_THROWS_AS(theorem_margin(ChannelModel::pareto_type(2.0), 100, 5, 0.0, params),
                  std::domain_error);
  CHECK_THROWS_AS(theorem_margin(ChannelModel::pareto_type(1.5), 100, 5, 0.0, params),
                  std::domain_error);
}

TEST_CASE("full flips swamp the margin for n >> m") {
  const auto rep = theorem_margin(kRayleigh, 10000, 5, 1.0, sharp_params());
  CHECK(rep.rhs > 10000.0);
  CHECK_FALSE(rep.feasible);
}

TEST_CASE("lhs falls and rhs climbs in m") {
  TheoremParams params;  // defaults
  for (const double zeta : {0.0, 0.001, 0.1}) {
    double prev_lhs = 1e308, prev_rhs = -1.0;
    for (std::size_t m = 1; m <= 512; m *= 2) {
      const auto rep = theorem_margin(kRayleigh, 10000, m, zeta, params);
      CHECK(rep.lhs < prev_lhs);
      CHECK(rep.rhs > prev_rhs);
      prev_lhs = rep.lhs;
      prev_rhs = rep.rhs;
    }
  }
}

TEST_CASE("max_feasible_m handles the pinned instance and extremes") {
  const auto params = sharp_params();
  CHECK(max_feasible_m(kRayleigh, 10000, 0.0, params) == 5);
  CHECK(max_feasible_m_scan(kRayleigh, 10000, 0.0, params) == 5);

  TheoremParams huge_beta = params;
  huge_beta.beta = 1e9;
  CHECK(max_feasible_m(kRayleigh, 10000, 0.0, huge_beta) == 0);
}

TEST_CASE("binary search equals the exhaustive scan on a lattice") {
  for (const auto& model :
       {ChannelModel::rayleigh_power(1.0), ChannelModel::rayleigh_power(0.5),
        ChannelModel::pareto_type(2.5), ChannelModel::pareto_type(4.0)}) {
    for (const std::size_t n : {64u, 1000u, 10000u}) {
      for (const double zeta : {0.0, 1e-4, 0.01, 0.3, 0.98}) {
        for (const double k : {1.2, 1.5, 2.5}) {
          TheoremParams params;
          params.k_const = k;
          CHECK(max_feasible_m(model, n, zeta, params) ==
                max_feasible_m_scan(model, n, zeta, params));
        }
      }
    }
  }
}

TEST_CASE("rayleigh solver output scales like log n") {
  TheoremParams params;  // defaults
  std::vector<double> ns, ms;
  for (double n = 1e3; n <= 1e7 + 1; n *= 10) {
    const std::size_t m = max_feasible_m(kRayleigh, static_cast<std::size_t>(n), 0.0, params);
    const double ratio = static_cast<double>(m) / std::log(n);
    CHECK(ratio >= 0.3);
    CHECK(ratio <= 0.7);
    ns.push_back(n);
    ms.push_back(static_cast<double>(m));
  }
  std::vector<double> log_n = ns;
  for (double& v : log_n) v = std::log(v);
  const LinearFit fit = least_squares(log_n, ms);
  CHECK(fit.r_squared >= 0.95);
}

TEST_CASE("pareto solver exponent approaches 1/(1+alpha)") {
  for (const double alpha : {2.5, 3.0}) {
    TheoremParams params;  // defaults
    const auto model = ChannelModel::pareto_type(alpha);
    const std::size_t m = max_feasible_m(model, 10000000, 0.0, params);
    const double exponent = std::log(static_cast<double>(m)) / std::log(1e7);
    CHECK(std::abs(exponent - 1.0 / (1.0 + alpha)) <= 0.05);
  }
}

TEST_CASE("falk_constants hand values") {
  const auto c = falk_constants(kRayleigh, 10000, 100);
  CHECK(c.a == doctest::Approx(4.605170185988092).epsilon(1e-12));
  CHECK(c.b == doctest::Approx(0.1).epsilon(1e-9));

  const auto lowest = falk_constants(kRayleigh, 10000, 10000);
  CHECK(lowest.a == 0.0);

  CHECK_THROWS_AS(falk_constants(kRayleigh, 100, 0), std::domain_error);
  CHECK_THROWS_AS(falk_constants(kRayleigh, 100, 101), std::domain_error);
}

TEST_CASE("falk ratio a/b grows along i = ceil(sqrt(n))") {
  for (const auto& model :
       {ChannelModel::rayleigh_power(1.0), ChannelModel::pareto_type(3.0)}) {
    double prev = -1.0;
    for (const std::size_t n : {1000u, 10000u, 100000u, 1000000u}) {
      const auto i = static_cast<std::size_t>(
          std::ceil(std::sqrt(static_cast<double>(n))));
      const auto c = falk_constants(model, n, i);
      CHECK(c.a / c.b > prev);
      prev = c.a / c.b;
    }
  }
  // spot value from the hand-checked pair
  const auto c4 = falk_constants(kRayleigh, 10000, 100);
  CHECK(c4.a / c4.b == doctest::Approx(46.05170185988092).epsilon(1e-9));
}

TEST_CASE("chernoff exponent values and shape") {
  CHECK(chernoff_exponent(std::exp(1.0) - 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chernoff_exponent(0.5) == doctest::Approx(0.10819766216224658).epsilon(1e-12));
  CHECK(chernoff_exponent(1e-8) <= 1e-12);  // vanishes toward 0+
  CHECK_THROWS_AS(chernoff_exponent(0.0), std::domain_error);
  CHECK_THROWS_AS(chernoff_exponent(-0.5), std::domain_error);

  double prev_value = 0.0, prev_slope = 0.0;
  for (double x = 0.25; x <= 4.0; x += 0.25) {
    const double value = chernoff_exponent(x);
    CHECK(value > 0.0);
    CHECK(value > prev_value);  // increasing
    const double slope = value - prev_value;
    CHECK(slope > prev_slope);  // convex
    prev_value = value;
    prev_slope = slope;
  }
}

TEST_CASE("tail bound values and domination over the exact binomial tail") {
  CHECK(first_kind_tail_bound(0.0, 100, 0.5) == 1.0);
  CHECK(first_kind_tail_bound(0.01, 1000, 0.5) ==
        doctest::Approx(0.3389249367546413).epsilon(1e-12));

  for (const double zeta : {0.02, 0.1, 0.4}) {
    for (const std::size_t m : {20u, 100u, 1000u}) {
      for (const double d3 : {0.2, 0.5, 1.0}) {
        const double bound = first_kind_tail_bound(zeta, m, d3);
        const double threshold = (1.0 + d3) * zeta * static_cast<double>(m);
        const auto k = static_cast<std::size_t>(std::floor(threshold));
        const double exact = binomial_tail_oracle(m, zeta, k);
        CHECK(bound >= exact);
        CHECK(binomial_upper_tail(m, zeta, threshold) ==
              doctest::Approx(exact).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("corollary_tolerance tracks the model's threshold shape") {
  TheoremParams params;  // defaults

  SUBCASE("rayleigh: threshold ~ log(n)/n") {
    const std::vector<std::size_t> grid{1000, 10000, 100000};
    const auto points = corollary_tolerance(kRayleigh, grid, params);
    REQUIRE(points.size() == 3);
    double prev = 1e9;
    for (const auto& p : points) {
      CHECK(p.zeta_threshold < prev);
      prev = p.zeta_threshold;
      const double shape = std::log(static_cast<double>(p.n)) / static_cast<double>(p.n);
      const double ratio = p.zeta_threshold / shape;
      CHECK(ratio >= 0.3);
      CHECK(ratio <= 0.7);
    }
  }

  SUBCASE("pareto: threshold ~ n^(-alpha/(1+alpha))") {
    const double alpha = 2.5;
    const auto model = ChannelModel::pareto_type(alpha);
    const std::vector<std::size_t> grid{1000, 10000, 100000};
    for (const auto& p : corollary_tolerance(model, grid, params)) {
      const double shape = std::pow(static_cast<double>(p.n), -alpha / (1.0 + alpha));
      const double ratio = p.zeta_threshold / shape;
      CHECK(ratio >= 0.5);
      CHECK(ratio <= 1.5);
    }
  }

  SUBCASE("infeasible point reports a zero threshold") {
    TheoremParams hopeless = params;
    hopeless.beta = 1e9;
    const std::vector<std::size_t> grid{1000};
    const auto points = corollary_tolerance(kRayleigh, grid, hopeless);
    CHECK(points[0].t_n == 0);
    CHECK(points[0].zeta_threshold == 0.0);
  }

  SUBCASE("grid must ascend and be nonempty") {
    const std::vector<std::size_t> bad{1000, 1000};
    CHECK_THROWS_AS(corollary_tolerance(kRayleigh, bad, params), std::invalid_argument);
    CHECK_THROWS_AS(corollary_tolerance(kRayleigh, std::vector<std::size_t>{}, params),
                    std::invalid_argument);
  }
}

TEST_CASE("corollary transfer check") {
  TheoremParams params;  // defaults
  CHECK(corollary_transfer_check(kRayleigh, 100000, params, 1.0, 0.0));
  CHECK(corollary_transfer_check(kRayleigh, 100000, params, 0.5, 0.1));
  // zeta far above the o(T/n) scale at matched m breaks feasibility
  CHECK_FALSE(corollary_transfer_check(kRayleigh, 100000, params, 0.5, 10.0));
  CHECK_THROWS_AS(corollary_transfer_check(kRayleigh, 1000, params, 0.0, 0.1),
                  std::domain_error);
  CHECK_THROWS_AS(corollary_transfer_check(kRayleigh, 1000, params, 1.5, 0.1),
                  std::domain_error);
}

TEST_CASE("params validation") {
  TheoremParams params;
  params.k_const = 1.0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  params = TheoremParams{};
  params.beta = 0.0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  params = TheoremParams{};
  params.delta1 = 1.0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  params = TheoremParams{};
  params.m_min = 0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}
