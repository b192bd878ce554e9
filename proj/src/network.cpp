#include "gvflab/network.hpp"

#include <algorithm>

namespace gvflab {

namespace {

constexpr double kLayer1Gamma = 0.8;

double default_alpha_init(double configured, int num_active) {
  if (configured > 0.0) return configured;
  return 0.1 / static_cast<double>(num_active);
}

}  // namespace

const char* variant_name(NetworkVariant v) {
  return v == NetworkVariant::TileCoded ? "tile" : "bias";
}

GvfNetwork::GvfNetwork(NetworkVariant variant, NetworkConfig config)
    : variant_(variant), config_(std::move(config)) {
  config_.l1_coder.validate();
  config_.l2_coder.validate();

  const bool tile_l1 = variant_ == NetworkVariant::TileCoded;
  const int l1_active = tile_l1 ? config_.l1_coder.num_tilings : 1;
  const std::size_t l1_dim = tile_l1 ? config_.l1_coder.hash_size : 1;
  const int l2_active = config_.l2_coder.num_tilings;
  const std::size_t l2_dim = config_.l2_coder.hash_size;

  auto make_node = [&](std::string id, int layer, GvfQuestion q, ReprKind repr,
                       std::size_t dim, int active) {
    GvfNode n;
    n.id = std::move(id);
    n.layer = layer;
    n.question = std::move(q);
    n.answer.lambda = config_.lambda;
    n.answer.repr = repr;
    n.answer.learner = config_.learner;
    n.answer.theta = config_.theta;
    n.answer.tau = config_.tau;
    n.answer.alpha_init = default_alpha_init(config_.alpha_init, active);
    n.answer.validate();
    n.learner = AutoStepGtdState(dim, n.answer.lambda, n.answer.alpha_init,
                                 n.answer.theta, n.answer.tau);
    n.rupee = RupeeState(dim, config_.rupee_beta0);
    n.num_active = active;
    return n;
  };

  GvfQuestion touch_q{CumulantSpec::touch_bit(),
                      DiscountSpec::terminate_on_contact(kLayer1Gamma),
                      PolicySpec::deterministic(Action::Forward)};
  nodes_.push_back(make_node("touch", 1, touch_q,
                             tile_l1 ? ReprKind::TileLayer1 : ReprKind::BiasBit,
                             l1_dim, l1_active));

  GvfQuestion left_q{CumulantSpec::prediction("touch"), DiscountSpec::constant(0.0),
                     PolicySpec::deterministic(Action::TurnLeft)};
  nodes_.push_back(make_node("touch-left", 2, left_q, ReprKind::TileLayer2, l2_dim, l2_active));

  GvfQuestion right_q{CumulantSpec::prediction("touch"), DiscountSpec::constant(0.0),
                      PolicySpec::deterministic(Action::TurnRight)};
  nodes_.push_back(make_node("touch-right", 2, right_q, ReprKind::TileLayer2, l2_dim, l2_active));

  validate_wiring();
}

void GvfNetwork::validate_wiring() const {
  // Prediction cumulants may only reference nodes in strictly lower layers.
  std::map<std::string, int> layer_of;
  for (const auto& n : nodes_) layer_of[n.id] = n.layer;
  for (const auto& n : nodes_) {
    if (n.question.cumulant.kind != CumulantSpec::Kind::Prediction) continue;
    auto it = layer_of.find(n.question.cumulant.ref_id);
    if (it == layer_of.end())
      throw ConfigError("node '" + n.id + "' references unknown node '" +
                        n.question.cumulant.ref_id + "'");
    if (it->second >= n.layer)
      throw ConfigError("node '" + n.id + "' cumulant must reference a lower layer");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (nodes_[i].layer < nodes_[i - 1].layer)
      throw ConfigError("nodes must be ordered by layer");
}

GvfNode& GvfNetwork::node(const std::string& id) {
  for (auto& n : nodes_)
    if (n.id == id) return n;
  throw ConfigError("unknown node '" + id + "'");
}

const GvfNode& GvfNetwork::node(const std::string& id) const {
  return const_cast<GvfNetwork*>(this)->node(id);
}

FeatureVector GvfNetwork::encode_l1(const Observation& obs) const {
  if (variant_ == NetworkVariant::BiasBit) return bias_bit();
  return layer1_encode(config_.sampler, config_.l1_coder, obs);
}

FeatureVector GvfNetwork::encode_l2(const Observation& obs, double touch_prediction) const {
  return layer2_encode(config_.sampler, config_.l2_coder, obs, touch_prediction);
}

std::vector<NodeReport> GvfNetwork::step(const Transition& tr) {
  if (!(tr.behavior_prob > 0.0))
    throw SupportError("transition behavior probability must be > 0");

  std::vector<NodeReport> reports;
  reports.reserve(nodes_.size());
  std::map<std::string, double> cache;

  // Layer 1: learn on the raw signal, then cache the post-update prediction
  // at the next observation. The pre-update prediction at obs_t equals the
  // value cached on the previous step, so layer-2 features stay consistent
  // across steps.
  GvfNode& touch = nodes_.front();
  const FeatureVector l1_t = encode_l1(tr.obs_t);
  const FeatureVector l1_n = encode_l1(tr.obs_next);
  const double pred_t = predict(touch.learner.w, l1_t);

  {
    const double rho = touch.question.target_policy.prob(tr.action) / tr.behavior_prob;
    const double c = cumulant_value(touch.question.cumulant, tr, cache);
    const double g = discount_value(touch.question.discount, tr.obs_next);
    NodeReport rep;
    rep.node = &touch;
    rep.cumulant = c;
    try {
      rep.outcome = touch.answer.learner == LearnerKind::AutostepGtd
                        ? autostep_gtd_step(touch.learner, l1_t, l1_n, c, g, rho)
                        : gtd_step(touch.learner, l1_t, l1_n, c, g, rho);
    } catch (const NumericalError& err) {
      throw NumericalError("node '" + touch.id + "': " + err.what());
    }
    rep.rupee = rupee_update(touch.rupee, rep.outcome.delta, touch.learner.e, touch.learner.h);
    touch.rupee_cum += rep.rupee;
    rep.rupee_cum = touch.rupee_cum;
    rep.relevance = weighted_feature_relevance(touch.learner.alpha, touch.learner.w, l1_t.active);
    reports.push_back(std::move(rep));
  }
  cache[touch.id] = predict(touch.learner.w, l1_n);

  // Layer 2: both nodes share the composite representation and differ only
  // in target policy and cumulant stream.
  const FeatureVector l2_t = encode_l2(tr.obs_t, pred_t);
  const FeatureVector l2_n = encode_l2(tr.obs_next, cache[touch.id]);

  for (std::size_t k = 1; k < nodes_.size(); ++k) {
    GvfNode& n = nodes_[k];
    const double rho = n.question.target_policy.prob(tr.action) / tr.behavior_prob;
    const double c = cumulant_value(n.question.cumulant, tr, cache);
    const double g = discount_value(n.question.discount, tr.obs_next);
    NodeReport rep;
    rep.node = &n;
    rep.cumulant = c;
    try {
      rep.outcome = n.answer.learner == LearnerKind::AutostepGtd
                        ? autostep_gtd_step(n.learner, l2_t, l2_n, c, g, rho)
                        : gtd_step(n.learner, l2_t, l2_n, c, g, rho);
    } catch (const NumericalError& err) {
      throw NumericalError("node '" + n.id + "': " + err.what());
    }
    rep.rupee = rupee_update(n.rupee, rep.outcome.delta, n.learner.e, n.learner.h);
    n.rupee_cum += rep.rupee;
    rep.rupee_cum = n.rupee_cum;
    rep.relevance = weighted_feature_relevance(n.learner.alpha, n.learner.w, l2_t.active);
    reports.push_back(std::move(rep));
  }
  return reports;
}

double GvfNetwork::node_mean_active_alpha(const GvfNode& n) const {
  return mean_active_step_size(n.learner.alpha, n.num_active);
}

VignetteTrace GvfNetwork::vignette_eval(const GridPenState& spawn,
                                        std::span<const Action> actions) const {
  VignetteTrace trace;
  GridPenState pose = spawn;
  Observation obs = observe(pose);
  const GvfNode& touch = nodes_.front();

  auto record = [&](const Observation& o) {
    const double touch_pred = predict(touch.learner.w, encode_l1(o));
    trace.touch.push_back(o.touch);
    trace.predictions[touch.id].push_back(touch_pred);
    const FeatureVector l2 = encode_l2(o, touch_pred);
    for (std::size_t k = 1; k < nodes_.size(); ++k)
      trace.predictions[nodes_[k].id].push_back(predict(nodes_[k].learner.w, l2));
  };

  record(obs);
  for (Action a : actions) {
    auto [next, next_obs] = gridpen_step(pose, a);
    pose = next;
    obs = next_obs;
    record(obs);
  }
  return trace;
}

GvfNetwork build_touch_network(NetworkVariant variant, NetworkConfig config) {
  return GvfNetwork(variant, std::move(config));
}

}  // namespace gvflab
