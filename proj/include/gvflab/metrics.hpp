#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "gvflab/errors.hpp"

namespace gvflab {

/// Truncated empirical return over a window of b+1 cumulants:
/// cumulants[k] = C_{t+k+1}, discounts[k] = gamma_{t+k+1}. The k = 0 term is
/// undiscounted; term k is scaled by the product of the first k discounts.
double empirical_return(std::span<const double> cumulants, std::span<const double> discounts);

/// Buffers predictions until b+1 subsequent (cumulant, discount) pairs have
/// arrived, then emits the matured empirical-return sample.
class ReturnBuffer {
 public:
  explicit ReturnBuffer(int b);

  struct Matured {
    std::int64_t step = 0;
    double g_tilde = 0.0;
    double prediction = 0.0;
  };

  int capacity() const { return b_; }

  /// Record the prediction made at `step`, before the transition is seen.
  void add_prediction(std::int64_t step, double value);

  /// Record the (cumulant, discount) pair produced by the next transition.
  /// Returns the matured sample for the oldest pending prediction once its
  /// window is complete; empty while immature.
  std::optional<Matured> add_pair(double cumulant, double gamma);

 private:
  int b_;
  std::int64_t pred_pos_ = 0;   // predictions received
  std::int64_t pair_pos_ = 0;   // pairs received
  std::int64_t front_pos_ = 0;  // pair position of pairs_.front()
  std::deque<std::pair<double, double>> pairs_;
  struct Pending {
    std::int64_t position;
    std::int64_t step;
    double value;
  };
  std::deque<Pending> pending_;
  std::vector<double> scratch_c_;
  std::vector<double> scratch_g_;
};

/// Signed error between a matured empirical return and the prediction.
inline double return_error(double g_tilde, double prediction) { return g_tilde - prediction; }

/// Running sum of squared return errors.
struct ReturnErrorAccum {
  double sum_squared = 0.0;
  std::int64_t count = 0;
  void add(double error) {
    sum_squared += error * error;
    ++count;
  }
};

/// Running statistics for the recent unsigned projected error estimate.
struct RupeeState {
  double beta0 = 1e-3;
  double tau_avg = 0.0;
  std::vector<double> delta_e_avg;

  RupeeState() = default;
  RupeeState(std::size_t n, double beta0_);
};

/// Advance the moving averages with this step's TD error and trace, and
/// return the current error estimate sqrt(|h_hat . avg(delta e)|). The
/// h_hat vector is borrowed read-only from the learner.
double rupee_update(RupeeState& state, double delta, std::span<const double> e,
                    std::span<const double> h_hat);

/// Mean absolute step-size over all features, scaled by the number of
/// active features so representations of different sparsity compare on the
/// same scale.
double mean_active_step_size(std::span<const double> alpha, int num_active);

/// Mean over the active features of |w_i| / alpha_i: large stable weights
/// score high, features still being chased by the step-size adapter score low.
double weighted_feature_relevance(std::span<const double> alpha, std::span<const double> w,
                                  std::span<const std::uint32_t> active);

}  // namespace gvflab
