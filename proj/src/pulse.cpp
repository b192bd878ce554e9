#include "gvflab/pulse.hpp"

namespace gvflab {

double pulse_true_return(std::int64_t t, const PulseConfig& cfg) {
  double g = 0.0;
  double coef = 1.0;
  for (std::int64_t k = 0; coef >= 1e-12; ++k) {
    g += coef * pulse_cumulant(t + k + 1, cfg);
    coef *= cfg.gamma;
  }
  return g;
}

ReferenceEstimates reference_estimates(std::int64_t t, const PulseConfig& cfg) {
  if (t < 1) throw ConfigError("reference_estimates: t must be >= 1");
  ReferenceEstimates out;
  out.tracking = static_cast<double>(pulse_cumulant(t - 1, cfg));
  out.anticipatory = (1.0 - cfg.gamma) * pulse_true_return(t + cfg.lead, cfg);
  return out;
}

}  // namespace gvflab
