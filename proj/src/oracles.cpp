#include "gvflab/oracles.hpp"

#include <cmath>

#include "gvflab/learner.hpp"
#include "gvflab/rng.hpp"

namespace gvflab {
namespace oracles {

double empirical_return_bruteforce(std::span<const double> cumulants,
                                   std::span<const double> discounts) {
  double g = 0.0;
  for (std::size_t k = 0; k < cumulants.size(); ++k) {
    double prod = 1.0;
    for (std::size_t j = 0; j < k; ++j) prod *= discounts[j];
    g += prod * cumulants[k];
  }
  return g;
}

double pulse_bellman_residual(const PulseConfig& cfg, std::int64_t t_max) {
  double worst = 0.0;
  for (std::int64_t t = 0; t < t_max; ++t) {
    const double lhs = pulse_true_return(t, cfg);
    const double rhs = pulse_cumulant(t + 1, cfg) + cfg.gamma * pulse_true_return(t + 1, cfg);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::array<double, 3> chain_values(double gamma, const std::array<double, 3>& c) {
  // v_i = c_{i+1} + g v_{i+1}; unrolling the cycle:
  // v_i = (c_{i+1} + g c_{i+2} + g^2 c_{i+3}) / (1 - g^3)
  const double denom = 1.0 - gamma * gamma * gamma;
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i) {
    const double a = c[(i + 1) % 3];
    const double b = c[(i + 2) % 3];
    const double d = c[(i + 3) % 3];
    v[i] = (a + gamma * b + gamma * gamma * d) / denom;
  }
  return v;
}

MetaGradientCheck meta_gradient_check(double beta, double eps, int steps, double gamma,
                                      double lambda, std::uint64_t seed) {
  const FeatureVector phi = FeatureVector::bias();

  auto run_fixed = [&](double alpha) {
    GtdState s(1, lambda, alpha);
    Rng rng(seed);
    for (int t = 0; t < steps; ++t) {
      const double c = 2.0 * rng.uniform() - 1.0;
      gtd_step(s, phi, phi, c, gamma, 1.0);
    }
    return s.w[0];
  };

  AutoStepGtdState s(1, lambda, std::exp(beta), /*theta=*/0.0, /*tau=*/1e4);
  Rng rng(seed);
  for (int t = 0; t < steps; ++t) {
    const double c = 2.0 * rng.uniform() - 1.0;
    autostep_gtd_step(s, phi, phi, c, gamma, 1.0);
  }

  MetaGradientCheck out;
  out.omega = s.omega[0];
  out.finite_diff = (run_fixed(std::exp(beta + eps)) - run_fixed(std::exp(beta - eps))) / (2.0 * eps);
  out.relative_error = std::abs(out.omega - out.finite_diff) /
                       std::max(std::abs(out.finite_diff), 1e-300);
  return out;
}

}  // namespace oracles
}  // namespace gvflab
