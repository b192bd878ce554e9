#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "gvflab/core.hpp"
#include "gvflab/pulse.hpp"

namespace gvflab {

enum class ExperimentKind { SyntheticPulse, GridpenTouch };

const char* experiment_name(ExperimentKind k);

/// Full description of a run. Loadable from a declarative config file
/// (key = value pairs with [section] tables); every field has a documented
/// default so minimal files stay small.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::GridpenTouch;
  std::int64_t steps = 50000;
  int trials = 5;
  std::uint64_t master_seed = 1;
  int cadence = 50;  // emit metric rows every this many steps
  int workers = 0;   // 0 = one thread per trial up to hardware concurrency
  std::string output_dir = "run-out";

  PulseConfig pulse;
  int return_buffer = 100;  // empirical-return window b

  // representation
  int tilings = 8;
  int tiles_per_dim = 4;
  std::uint32_t hash_size = 1u << 15;
  int subsample_count = 100;

  // learner
  double lambda = 0.9;
  LearnerKind learner = LearnerKind::AutostepGtd;
  double theta = 1e-2;
  double tau = 1e4;
  double alpha_init = 0.0;  // 0 = 0.1 / active feature count

  double rupee_beta0 = 1e-3;

  void validate() const;

  /// Canonical text form: every field, one sorted key=value line each.
  std::string canonical() const;

  /// FNV-1a hash of the canonical form, as fixed-width hex.
  std::string hash() const;
};

/// Parse a config file. Unknown sections or keys are errors, as are values
/// of the wrong type; messages name the offending field.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Parsed key/value tables of a config file, exposed for round-trip tests.
using ConfigTable = std::map<std::string, std::map<std::string, std::string>>;
ConfigTable parse_config_text(const std::string& text, const std::string& origin);

}  // namespace gvflab
