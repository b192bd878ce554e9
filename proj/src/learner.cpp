#include "gvflab/learner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gvflab/errors.hpp"

namespace gvflab {

namespace {

constexpr double kTraceDrop = 1e-12;   // entries below this are zeroed
constexpr double kDeltaGuard = 1e-12;  // division guard for the overshoot term

void check_inputs(const GtdState& s, const FeatureVector& phi_t, const FeatureVector& phi_next,
                  double cumulant, double gamma_next, double rho) {
  if (phi_t.dim != s.size() || phi_next.dim != s.size())
    throw ConfigError("learner: feature dimension mismatch");
  if (!std::isfinite(cumulant) || !std::isfinite(gamma_next) || !std::isfinite(rho))
    throw NumericalError("learner: non-finite input at step " + std::to_string(s.steps_done));
  if (gamma_next < 0.0 || gamma_next > 1.0)
    throw NumericalError("learner: discount outside [0,1] at step " + std::to_string(s.steps_done));
  if (rho < 0.0)
    throw NumericalError("learner: negative importance ratio at step " + std::to_string(s.steps_done));
}

// e <- rho (gamma lambda e + phi_t)
void update_trace(GtdState& s, const FeatureVector& phi_t, double gamma_next, double rho) {
  const double decay = rho * gamma_next * s.lambda;
  std::size_t kept = 0;
  for (std::size_t k = 0; k < s.e_active.size(); ++k) {
    const std::uint32_t i = s.e_active[k];
    const double v = s.e[i] * decay;
    if (std::abs(v) < kTraceDrop) {
      s.e[i] = 0.0;
      s.e_flag[i] = 0;
    } else {
      s.e[i] = v;
      s.e_active[kept++] = i;
    }
  }
  s.e_active.resize(kept);
  if (rho == 0.0) return;
  for (std::uint32_t i : phi_t.active) {
    s.e[i] += rho;
    if (!s.e_flag[i]) {
      s.e_flag[i] = 1;
      s.e_active.push_back(i);
    } else if (std::abs(s.e[i]) < kTraceDrop) {
      // additive cancellation; keep the slot, value is effectively zero
      s.e[i] = 0.0;
    }
  }
}

// w <- w + alpha (delta e - gamma (1-lambda) (e.h) phi')
// h <- h + alpha (delta e - (h.phi) phi)
// Scalars e.h and h.phi are taken before either update.
void apply_weight_updates(GtdState& s, double delta, const FeatureVector& phi_t,
                          const FeatureVector& phi_next, double gamma_next) {
  double e_dot_h = 0.0;
  for (std::uint32_t i : s.e_active) e_dot_h += s.e[i] * s.h[i];
  double h_dot_phi = 0.0;
  for (std::uint32_t i : phi_t.active) h_dot_phi += s.h[i];

  const double correction = gamma_next * (1.0 - s.lambda) * e_dot_h;
  for (std::uint32_t i : s.e_active) s.w[i] += s.alpha[i] * delta * s.e[i];
  if (correction != 0.0)
    for (std::uint32_t i : phi_next.active) s.w[i] -= s.alpha[i] * correction;

  for (std::uint32_t i : s.e_active) s.h[i] += s.alpha[i] * delta * s.e[i];
  for (std::uint32_t i : phi_t.active) s.h[i] -= s.alpha[i] * h_dot_phi;
}

}  // namespace

GtdState::GtdState(std::size_t n, double lambda_, double alpha_init)
    : w(n, 0.0), e(n, 0.0), h(n, 0.0), alpha(n, alpha_init), lambda(lambda_) {
  if (!(alpha_init > 0.0)) throw ConfigError("learner: alpha_init must be > 0");
  if (!(lambda_ >= 0.0 && lambda_ <= 1.0)) throw ConfigError("learner: lambda must be in [0,1]");
  e_flag.assign(n, 0);
}

AutoStepGtdState::AutoStepGtdState(std::size_t n, double lambda_, double alpha_init,
                                   double theta_, double tau_)
    : GtdState(n, lambda_, alpha_init), omega(n, 0.0), eta(n, 0.0), xi(n, 0.0),
      theta(theta_), tau(tau_) {
  if (theta_ < 0.0) throw ConfigError("learner: theta must be >= 0");
  if (!(tau_ > 0.0)) throw ConfigError("learner: tau must be > 0");
}

double predict(std::span<const double> w, const FeatureVector& phi) {
  if (phi.dim != w.size()) throw ConfigError("predict: feature dimension mismatch");
  double v = 0.0;
  for (std::uint32_t i : phi.active) v += w[i];
  return v;
}

double effective_step_size(const GtdState& s, const FeatureVector& phi_t,
                           const FeatureVector& phi_next, double gamma_next, double delta) {
  // (alpha e)^T (phi_t - gamma phi')
  double value = 0.0;
  for (std::uint32_t i : phi_t.active) value += s.alpha[i] * s.e[i];
  if (gamma_next != 0.0) {
    double next = 0.0;
    for (std::uint32_t i : phi_next.active) next += s.alpha[i] * s.e[i];
    value -= gamma_next * next;
  }
  if (std::abs(delta) >= kDeltaGuard) {
    double e_dot_h = 0.0;
    for (std::uint32_t i : s.e_active) e_dot_h += s.e[i] * s.h[i];
    const double k = gamma_next * (1.0 - s.lambda) * e_dot_h / delta;
    if (k != 0.0) {
      const double overlap = static_cast<double>(active_overlap(phi_t, phi_next));
      value -= k * (overlap - gamma_next * static_cast<double>(phi_next.active.size()));
    }
  }
  return value;
}

StepOutcome gtd_step(GtdState& s, const FeatureVector& phi_t, const FeatureVector& phi_next,
                     double cumulant, double gamma_next, double rho) {
  check_inputs(s, phi_t, phi_next, cumulant, gamma_next, rho);

  const double v_t = predict(s.w, phi_t);
  const double v_next = predict(s.w, phi_next);
  const double delta = cumulant + gamma_next * v_next - v_t;
  if (!std::isfinite(delta))
    throw NumericalError("learner: non-finite TD error at step " + std::to_string(s.steps_done));

  update_trace(s, phi_t, gamma_next, rho);
  const double esz = effective_step_size(s, phi_t, phi_next, gamma_next, delta);
  apply_weight_updates(s, delta, phi_t, phi_next, gamma_next);

  ++s.steps_done;
  return {delta, v_t, esz, rho};
}

StepOutcome autostep_gtd_step(AutoStepGtdState& s, const FeatureVector& phi_t,
                              const FeatureVector& phi_next, double cumulant,
                              double gamma_next, double rho) {
  check_inputs(s, phi_t, phi_next, cumulant, gamma_next, rho);

  const double v_t = predict(s.w, phi_t);
  const double v_next = predict(s.w, phi_next);
  const double delta = cumulant + gamma_next * v_next - v_t;
  if (!std::isfinite(delta))
    throw NumericalError("learner: non-finite TD error at step " + std::to_string(s.steps_done));

  const bool adapt = s.theta != 0.0;

  if (adapt) {
    // Normalizer and exponential step-size update on the active features.
    // The trace read here is the pre-step trace.
    for (std::uint32_t i : phi_t.active) {
      const double corr = delta * s.omega[i];
      const double mag = std::abs(corr);
      const double decayed = s.xi[i] + (1.0 / s.tau) * s.alpha[i] * s.e[i] * (mag - s.xi[i]);
      s.xi[i] = std::max(mag, decayed);
      if (s.xi[i] != 0.0) {
        const double grown = s.alpha[i] * std::exp(s.theta * corr / s.xi[i]);
        s.alpha[i] = std::clamp(grown, kAlphaMin, kAlphaMax);
      }
    }
  }

  update_trace(s, phi_t, gamma_next, rho);

  double esz = effective_step_size(s, phi_t, phi_next, gamma_next, delta);
  if (adapt) {
    const double m = std::max(esz, 1.0);
    if (m > 1.0) {
      for (double& a : s.alpha) a /= m;
      esz /= m;
    }
  }

  apply_weight_updates(s, delta, phi_t, phi_next, gamma_next);

  // Meta-gradient traces. The scalar omega.phi is the pre-update value and
  // is shared by both updates; h is read after its own update, eta before.
  double omega_dot_phi = 0.0;
  for (std::uint32_t i : phi_t.active) omega_dot_phi += s.omega[i];
  double e_dot_h_eta = 0.0;
  for (std::uint32_t i : s.e_active) e_dot_h_eta += s.e[i] * (s.h[i] + s.eta[i]);
  double h_eta_dot_phi = 0.0;
  for (std::uint32_t i : phi_t.active) h_eta_dot_phi += s.h[i] + s.eta[i];

  const double coeff = delta - omega_dot_phi;
  for (std::uint32_t i : s.e_active) s.omega[i] += s.alpha[i] * s.e[i] * coeff;
  const double omega_corr = gamma_next * (1.0 - s.lambda) * e_dot_h_eta;
  if (omega_corr != 0.0)
    for (std::uint32_t i : phi_next.active) s.omega[i] -= s.alpha[i] * omega_corr;

  for (std::uint32_t i : s.e_active) s.eta[i] += s.alpha[i] * s.e[i] * coeff;
  for (std::uint32_t i : phi_t.active) s.eta[i] -= s.alpha[i] * h_eta_dot_phi;

  ++s.steps_done;
  return {delta, v_t, esz, rho};
}

}  // namespace gvflab
