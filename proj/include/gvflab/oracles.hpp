#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gvflab/pulse.hpp"

namespace gvflab {
namespace oracles {

/// Brute-force evaluation of the truncated return formula: for every term k
/// the discount product is recomputed from scratch. Deliberately the naive
/// double loop, as an independent cross-check of empirical_return.
double empirical_return_bruteforce(std::span<const double> cumulants,
                                   std::span<const double> discounts);

/// Max |G_t - (c_{t+1} + gamma G_{t+1})| over t in [0, t_max).
double pulse_bellman_residual(const PulseConfig& cfg, std::int64_t t_max);

/// Exact value function of the 3-state deterministic cycle with per-state
/// cumulants: v_i = c[(i+1)%3] + gamma * v_{(i+1)%3}, solved directly.
std::array<double, 3> chain_values(double gamma, const std::array<double, 3>& cumulant_of_state);

struct MetaGradientCheck {
  double omega = 0.0;       // learner's step-size gradient estimate
  double finite_diff = 0.0; // central difference of the final weight over beta
  double relative_error = 0.0;
};

/// Single-feature stream check of the meta-gradient trace: run the adaptive
/// learner with theta = 0 at alpha = exp(beta), and fixed-step learners at
/// exp(beta +/- eps), over the same cumulant sequence.
MetaGradientCheck meta_gradient_check(double beta, double eps, int steps, double gamma,
                                      double lambda, std::uint64_t seed);

}  // namespace oracles
}  // namespace gvflab
