#pragma once

#include <filesystem>
#include <string>

#include "gvflab/learner.hpp"

namespace gvflab {

/// Flat JSON snapshot of learner state for checkpoint files. Field names
/// are part of the checkpoint schema: w, e, h, alpha, omega, eta, xi,
/// lambda, theta, tau, steps_done.
std::string snapshot_to_json(const AutoStepGtdState& state);
AutoStepGtdState snapshot_from_json(const std::string& text);

void save_snapshot(const AutoStepGtdState& state, const std::filesystem::path& file);
AutoStepGtdState load_snapshot(const std::filesystem::path& file);

}  // namespace gvflab
