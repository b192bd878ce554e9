#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "gvflab/core.hpp"
#include "gvflab/gridpen.hpp"
#include "gvflab/learner.hpp"
#include "gvflab/metrics.hpp"
#include "gvflab/repr.hpp"

namespace gvflab {

/// Which layer-1 representation a network variant uses. Layer 2 always uses
/// the shared tile-coded composite representation.
enum class NetworkVariant { TileCoded, BiasBit };

const char* variant_name(NetworkVariant v);

struct NetworkConfig {
  PixelSubsampler sampler;
  TileCoderConfig l1_coder;  // pixels + touch
  TileCoderConfig l2_coder;  // pixels + touch + touch prediction
  double lambda = 0.9;
  LearnerKind learner = LearnerKind::AutostepGtd;
  double theta = 1e-2;
  double tau = 1e4;
  double alpha_init = 0.0;  // 0 = 0.1 / active feature count
  double rupee_beta0 = 1e-3;
};

/// One prediction in the network: its question, its answer, its learner
/// state, and its attached evaluation statistics.
struct GvfNode {
  std::string id;
  int layer = 0;
  GvfQuestion question;
  GvfAnswer answer;
  AutoStepGtdState learner;
  RupeeState rupee;
  double rupee_cum = 0.0;
  int num_active = 1;  // active features per step for this representation
};

struct NodeReport {
  const GvfNode* node = nullptr;
  StepOutcome outcome;
  double cumulant = 0.0;
  double rupee = 0.0;
  double rupee_cum = 0.0;
  double relevance = 0.0;  // weighted feature relevance on this step's active set
};

/// Per-step prediction traces for a scripted trajectory.
struct VignetteTrace {
  std::vector<int> touch;                                // ground-truth contact bit
  std::map<std::string, std::vector<double>> predictions;  // node id -> trace
};

/// Two-layer prediction network over the pen: a `touch` node whose cumulant
/// is the contact bit, and `touch-left` / `touch-right` nodes whose cumulant
/// is the touch node's prediction after a turn.
class GvfNetwork {
 public:
  GvfNetwork(NetworkVariant variant, NetworkConfig config);

  NetworkVariant variant() const { return variant_; }
  const std::vector<GvfNode>& nodes() const { return nodes_; }
  GvfNode& node(const std::string& id);
  const GvfNode& node(const std::string& id) const;

  /// Advance every node one step: layer 1 first, then layer 2 against the
  /// freshly cached layer-1 prediction.
  std::vector<NodeReport> step(const Transition& tr);

  /// Mean active step-size for a node (full scan; intended for sampling at
  /// the metric cadence).
  double node_mean_active_alpha(const GvfNode& n) const;

  /// Run a scripted trajectory with learning frozen and record every node's
  /// prediction at each pose.
  VignetteTrace vignette_eval(const GridPenState& spawn, std::span<const Action> actions) const;

 private:
  FeatureVector encode_l1(const Observation& obs) const;
  FeatureVector encode_l2(const Observation& obs, double touch_prediction) const;
  void validate_wiring() const;

  NetworkVariant variant_;
  NetworkConfig config_;
  std::vector<GvfNode> nodes_;  // update order: ascending layer
};

GvfNetwork build_touch_network(NetworkVariant variant, NetworkConfig config);

}  // namespace gvflab
