#include "gvflab/metrics.hpp"

#include <cmath>

namespace gvflab {

double empirical_return(std::span<const double> cumulants, std::span<const double> discounts) {
  if (cumulants.size() != discounts.size() || cumulants.empty())
    throw ConfigError("empirical_return: window spans must be equal and non-empty");
  double g = cumulants[0];
  double prod = 1.0;
  for (std::size_t k = 1; k < cumulants.size(); ++k) {
    prod *= discounts[k - 1];
    g += prod * cumulants[k];
  }
  return g;
}

ReturnBuffer::ReturnBuffer(int b) : b_(b) {
  if (b < 0) throw ConfigError("return buffer: b must be >= 0");
}

void ReturnBuffer::add_prediction(std::int64_t step, double value) {
  pending_.push_back({pred_pos_++, step, value});
}

std::optional<ReturnBuffer::Matured> ReturnBuffer::add_pair(double cumulant, double gamma) {
  pairs_.emplace_back(cumulant, gamma);
  ++pair_pos_;

  if (pending_.empty()) {
    // nothing waiting; keep only a window's worth of history
    while (static_cast<std::int64_t>(pairs_.size()) > b_ + 1) {
      pairs_.pop_front();
      ++front_pos_;
    }
    return std::nullopt;
  }

  const Pending& front = pending_.front();
  // Prediction at position p matures once pairs p .. p+b have arrived.
  if (pair_pos_ <= front.position + b_) return std::nullopt;

  scratch_c_.resize(b_ + 1);
  scratch_g_.resize(b_ + 1);
  const std::int64_t base = front.position - front_pos_;
  for (int k = 0; k <= b_; ++k) {
    const auto& [c, g] = pairs_[base + k];
    scratch_c_[k] = c;
    scratch_g_[k] = g;
  }
  Matured out{front.step, empirical_return(scratch_c_, scratch_g_), front.value};
  pending_.pop_front();

  const std::int64_t next_base = pending_.empty() ? pair_pos_ - (b_ + 1)
                                                  : pending_.front().position;
  while (front_pos_ < next_base && !pairs_.empty()) {
    pairs_.pop_front();
    ++front_pos_;
  }
  return out;
}

RupeeState::RupeeState(std::size_t n, double beta0_) : beta0(beta0_), delta_e_avg(n, 0.0) {
  if (!(beta0_ > 0.0 && beta0_ < 1.0)) throw ConfigError("rupee: beta0 must be in (0,1)");
}

double rupee_update(RupeeState& state, double delta, std::span<const double> e,
                    std::span<const double> h_hat) {
  if (e.size() != state.delta_e_avg.size() || h_hat.size() != state.delta_e_avg.size())
    throw ConfigError("rupee: vector length mismatch");
  state.tau_avg = (1.0 - state.beta0) * state.tau_avg + state.beta0;
  const double beta = state.beta0 / state.tau_avg;
  const double keep = 1.0 - beta;
  double acc = 0.0;
  double* avg = state.delta_e_avg.data();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double a = keep * avg[i] + beta * delta * e[i];
    avg[i] = a;
    acc += h_hat[i] * a;
  }
  return std::sqrt(std::abs(acc));
}

double mean_active_step_size(std::span<const double> alpha, int num_active) {
  if (num_active < 1) throw ConfigError("mean_active_step_size: num_active must be >= 1");
  if (alpha.empty()) throw ConfigError("mean_active_step_size: empty step-size vector");
  double sum = 0.0;
  for (double a : alpha) sum += std::abs(a);
  return sum / static_cast<double>(alpha.size()) * static_cast<double>(num_active);
}

double weighted_feature_relevance(std::span<const double> alpha, std::span<const double> w,
                                  std::span<const std::uint32_t> active) {
  if (active.empty()) throw ConfigError("weighted_feature_relevance: empty active set");
  double sum = 0.0;
  for (std::uint32_t i : active) {
    if (!(alpha[i] > 0.0))
      throw NumericalError("weighted_feature_relevance: nonpositive step-size");
    sum += std::abs(w[i]) / alpha[i];
  }
  return sum / static_cast<double>(active.size());
}

}  // namespace gvflab
