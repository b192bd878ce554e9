#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gvflab/core.hpp"
#include "gvflab/rng.hpp"

namespace gvflab {

/// Walled square pen on a discrete grid. The agent occupies interior cells
/// and can move forward or rotate in place. Each wall has a distinct base
/// color and a silver column at its mid-section; observations carry a
/// first-person raycast rendering plus a contact bit for the cell ahead.
inline constexpr int kPenSize = 30;
inline constexpr int kImageRows = 48;
inline constexpr int kImageCols = 64;

enum class Heading : int { North = 0, East = 1, South = 2, West = 3 };

struct GridPenState {
  int row = kPenSize / 2;
  int col = kPenSize / 2;
  Heading heading = Heading::North;

  bool operator==(const GridPenState&) const = default;
};

Heading turn_left(Heading h);
Heading turn_right(Heading h);

/// Unit displacement of a heading as (drow, dcol).
std::pair<int, int> heading_delta(Heading h);

bool is_interior(int row, int col);

/// Apply an action: forward moves one cell unless blocked by a wall, turns
/// rotate in place. The returned observation renders the post-action pose;
/// touch is 1 iff the cell directly ahead is a wall.
std::pair<GridPenState, Observation> gridpen_step(const GridPenState& state, Action action);

/// Deterministic first-person view: single-bounce column raycast with a 90
/// degree field of view. Wall band height is inversely proportional to the
/// perpendicular hit distance and brightness decays as 1/(1 + d/8).
Image render(const GridPenState& state);

/// Observation at a pose without taking an action.
Observation observe(const GridPenState& state);

/// Random-walk behavior policy: forward with probability 1/2, each turn
/// with probability 1/4. Returns the sampled action and its probability.
std::pair<Action, double> behavior_policy(Rng& rng, const GridPenState& state);

/// Scripted evaluation trajectory: spawn `distance` cells from the given
/// wall facing it, drive forward until contact, turn left once, then
/// continue forward. Returns the action sequence (length `steps`) and the
/// spawn pose.
struct VignetteScript {
  GridPenState spawn;
  std::vector<Action> actions;
};
VignetteScript script_approach_and_turn(Heading wall, int lateral, int distance = 6,
                                        int steps = 10);

}  // namespace gvflab
