#include "gvflab/core.hpp"

#include <cmath>
#include <numeric>

namespace gvflab {

namespace {
constexpr double kProbSumTol = 1e-12;
}

const char* action_name(Action a) {
  switch (a) {
    case Action::Forward: return "forward";
    case Action::TurnLeft: return "turn-left";
    case Action::TurnRight: return "turn-right";
  }
  return "?";
}

PolicySpec PolicySpec::deterministic(Action a) {
  std::array<double, kNumActions> p{0.0, 0.0, 0.0};
  p[static_cast<int>(a)] = 1.0;
  return table(p);
}

PolicySpec PolicySpec::uniform() {
  return table({1.0 / 3, 1.0 / 3, 1.0 / 3});
}

PolicySpec PolicySpec::table(const std::array<double, kNumActions>& p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw ConfigError("policy probabilities must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbSumTol)
    throw ConfigError("policy probabilities must sum to 1");
  PolicySpec spec;
  spec.p_ = p;
  return spec;
}

DiscountSpec DiscountSpec::constant(double g) {
  if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("discount must be in [0,1]");
  return {g, false};
}

DiscountSpec DiscountSpec::terminate_on_contact(double g) {
  if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("discount must be in [0,1]");
  return {g, true};
}

void GvfAnswer::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must be in [0,1]");
  if (!(theta >= 0.0)) throw ConfigError("theta must be >= 0");
  if (!(tau > 0.0)) throw ConfigError("tau must be > 0");
  if (!(alpha_init > 0.0)) throw ConfigError("alpha_init must be > 0");
}

double cumulant_value(const CumulantSpec& spec, const Transition& tr,
                      const std::map<std::string, double>& lower_predictions) {
  switch (spec.kind) {
    case CumulantSpec::Kind::TouchBit:
      return static_cast<double>(tr.obs_next.touch);
    case CumulantSpec::Kind::Prediction: {
      auto it = lower_predictions.find(spec.ref_id);
      if (it == lower_predictions.end())
        throw ConfigError("cumulant references unknown prediction '" + spec.ref_id + "'");
      return it->second;
    }
  }
  throw ConfigError("invalid cumulant kind");
}

double discount_value(const DiscountSpec& spec, const Observation& obs_next) {
  if (spec.terminate_on_touch && obs_next.touch != 0) return 0.0;
  return spec.value;
}

double importance_ratio(const PolicySpec& pi, const PolicySpec& mu,
                        const Observation& /*obs*/, Action action) {
  const double mu_p = mu.prob(action);
  if (mu_p <= 0.0)
    throw SupportError(std::string("behavior policy does not support action ") +
                       action_name(action));
  return pi.prob(action) / mu_p;
}

}  // namespace gvflab
