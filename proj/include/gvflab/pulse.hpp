#pragma once

#include <cstdint>

#include "gvflab/errors.hpp"

namespace gvflab {

/// Periodic binary square pulse used as a synthetic cumulant stream, with
/// two reference estimators of its discounted return: one that lags the
/// signal and one that leads it.
struct PulseConfig {
  std::int64_t period = 80;  // steps per cycle
  std::int64_t width = 20;   // high steps per cycle
  double gamma = 0.3;
  std::int64_t lead = 3;     // anticipatory estimator lead, in steps

  void validate() const {
    if (!(width > 0 && width < period)) throw ConfigError("pulse: need 0 < width < period");
    if (lead < 1) throw ConfigError("pulse: lead must be >= 1");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("pulse: gamma must be in [0,1)");
  }
};

/// 1 during the first `width` steps of each period, else 0.
inline int pulse_cumulant(std::int64_t t, const PulseConfig& cfg) {
  const std::int64_t m = ((t % cfg.period) + cfg.period) % cfg.period;
  return m < cfg.width ? 1 : 0;
}

/// Exact discounted return of the pulse from step t, by brute-force
/// summation until the discount product falls below 1e-12.
double pulse_true_return(std::int64_t t, const PulseConfig& cfg);

struct ReferenceEstimates {
  double tracking = 0.0;      // previous cumulant; lags the signal
  double anticipatory = 0.0;  // normalized true return led by `lead` steps
};

/// Both reference estimates at step t >= 1. Estimates live on the
/// normalized scale where a sustained pulse of height 1 has value 1.
ReferenceEstimates reference_estimates(std::int64_t t, const PulseConfig& cfg);

}  // namespace gvflab
