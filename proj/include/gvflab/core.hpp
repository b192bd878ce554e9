#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gvflab/errors.hpp"

namespace gvflab {

/// Row-major RGB image, one byte per channel.
struct Image {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> data;  // rows * cols * 3

  Image() = default;
  Image(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c * 3, 0) {}

  std::uint8_t* px(int r, int c) { return data.data() + (static_cast<std::size_t>(r) * cols + c) * 3; }
  const std::uint8_t* px(int r, int c) const {
    return data.data() + (static_cast<std::size_t>(r) * cols + c) * 3;
  }
};

/// What the agent senses on a time-step: pixels plus a binary contact bit.
struct Observation {
  Image pixels;
  int touch = 0;  // 0 or 1
};

enum class Action : int { Forward = 0, TurnLeft = 1, TurnRight = 2 };
inline constexpr int kNumActions = 3;

const char* action_name(Action a);

/// One step of experience: (o_t, a_t, o_{t+1}) plus the probability with
/// which the behavior policy took a_t, recorded at generation time so that
/// learners never need the behavior policy object itself.
struct Transition {
  Observation obs_t;
  Action action = Action::Forward;
  Observation obs_next;
  double behavior_prob = 1.0;  // must be > 0
};

/// Distribution over the discrete action set.
class PolicySpec {
 public:
  PolicySpec() : p_{1.0 / 3, 1.0 / 3, 1.0 / 3} {}

  static PolicySpec deterministic(Action a);
  static PolicySpec uniform();
  static PolicySpec table(const std::array<double, kNumActions>& p);

  double prob(Action a) const { return p_[static_cast<int>(a)]; }

  bool operator==(const PolicySpec&) const = default;

 private:
  std::array<double, kNumActions> p_;
};

/// Signal a value function accumulates: either a raw bit of the next
/// observation or another node's prediction, referenced by id.
struct CumulantSpec {
  enum class Kind { TouchBit, Prediction };
  Kind kind = Kind::TouchBit;
  std::string ref_id;  // set when kind == Prediction

  static CumulantSpec touch_bit() { return {Kind::TouchBit, {}}; }
  static CumulantSpec prediction(std::string id) { return {Kind::Prediction, std::move(id)}; }

  bool operator==(const CumulantSpec&) const = default;
};

/// Per-step discount, optionally terminating (discount 0) on contact.
struct DiscountSpec {
  double value = 0.0;
  bool terminate_on_touch = false;

  static DiscountSpec constant(double g);
  static DiscountSpec terminate_on_contact(double g);

  bool operator==(const DiscountSpec&) const = default;
};

/// What a prediction is about: cumulant, discount, and target policy.
struct GvfQuestion {
  CumulantSpec cumulant;
  DiscountSpec discount;
  PolicySpec target_policy;
};

enum class LearnerKind { GtdFixedAlpha, AutostepGtd };
enum class ReprKind { BiasBit, TileLayer1, TileLayer2 };

/// How a prediction is learned: trace decay, representation, learner and
/// its meta-parameters. Orthogonal to the question being asked.
struct GvfAnswer {
  double lambda = 0.9;
  ReprKind repr = ReprKind::BiasBit;
  LearnerKind learner = LearnerKind::AutostepGtd;
  double theta = 1e-2;       // meta step-size
  double tau = 1e4;          // normalizer decay
  double alpha_init = 0.1;   // initial per-feature step-size

  void validate() const;
};

/// Resolve a cumulant against a transition and the lower-layer predictions
/// computed this step.
double cumulant_value(const CumulantSpec& spec, const Transition& tr,
                      const std::map<std::string, double>& lower_predictions);

/// Discount for the next observation, in [0, 1].
double discount_value(const DiscountSpec& spec, const Observation& obs_next);

/// Importance-sampling ratio pi(a)/mu(a). The observation argument exists
/// for observation-dependent policies; table policies ignore it.
double importance_ratio(const PolicySpec& pi, const PolicySpec& mu,
                        const Observation& obs, Action action);

}  // namespace gvflab
