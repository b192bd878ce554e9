#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gvflab/feature.hpp"

namespace gvflab {

/// Result of one learner step.
struct StepOutcome {
  double delta = 0.0;           // TD error
  double prediction = 0.0;      // value at phi_t before the update
  double effective_step = 0.0;  // effective step size on this transition
                                // (post-clamp for the adaptive learner)
  double rho = 0.0;             // importance ratio used
};

/// Linear GTD(lambda) learner state. Weights, bias-correction weights,
/// eligibility trace, and a per-feature step-size vector.
///
/// The trace is stored densely; indices with nonzero entries are tracked in
/// e_active so per-step work stays proportional to the live trace support.
struct GtdState {
  std::vector<double> w;
  std::vector<double> e;
  std::vector<double> h;
  std::vector<double> alpha;
  double lambda = 0.9;
  std::uint64_t steps_done = 0;

  std::vector<std::uint32_t> e_active;
  std::vector<std::uint8_t> e_flag;

  GtdState() = default;
  GtdState(std::size_t n, double lambda, double alpha_init);

  std::size_t size() const { return w.size(); }
};

/// GTD(lambda) with per-feature step-size adaptation: meta-gradient traces
/// omega (dw/dbeta) and eta (dh/dbeta), the update normalizer xi, the meta
/// step-size theta, and the normalizer decay tau.
struct AutoStepGtdState : GtdState {
  std::vector<double> omega;
  std::vector<double> eta;
  std::vector<double> xi;
  double theta = 1e-2;
  double tau = 1e4;

  AutoStepGtdState() = default;
  AutoStepGtdState(std::size_t n, double lambda, double alpha_init,
                   double theta, double tau);
};

/// v = w . phi for binary features.
double predict(std::span<const double> w, const FeatureVector& phi);

/// One GTD(lambda) step with fixed step-sizes. Trace is updated before the
/// weight and bias-correction updates.
StepOutcome gtd_step(GtdState& state, const FeatureVector& phi_t, const FeatureVector& phi_next,
                     double cumulant, double gamma_next, double rho);

/// One AutoStep-GTD(lambda) step. With theta == 0 the step-size machinery
/// (normalizer, exponential update, overshoot clamp) is bypassed and the
/// weight trajectory matches gtd_step exactly; the meta-gradient traces are
/// still maintained.
StepOutcome autostep_gtd_step(AutoStepGtdState& state, const FeatureVector& phi_t,
                              const FeatureVector& phi_next, double cumulant,
                              double gamma_next, double rho);

/// Fraction of the TD error removed by the upcoming update. Must be called
/// after the trace update and before the weight updates. Values above 1
/// indicate overshoot. When |delta| is below 1e-12 the bias-correction term
/// is dropped.
double effective_step_size(const GtdState& state, const FeatureVector& phi_t,
                           const FeatureVector& phi_next, double gamma_next, double delta);

/// Step-size bounds enforced after the exponential meta update.
inline constexpr double kAlphaMin = 1e-10;
inline constexpr double kAlphaMax = 1e2;

}  // namespace gvflab
