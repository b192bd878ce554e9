#include "gvflab/gridpen.hpp"

#include <cmath>

namespace gvflab {

namespace {

struct Rgb {
  std::uint8_t r, g, b;
};

// One base color per wall, indexed by the Heading of the wall the agent
// would face to see it (north wall = Heading::North, ...).
constexpr Rgb kWallBase[4] = {
    {30, 60, 220},   // north: blue
    {210, 40, 40},   // east: red
    {40, 200, 70},   // south: green
    {230, 210, 40},  // west: yellow
};
constexpr Rgb kSilver = {185, 185, 195};
constexpr Rgb kSky = {135, 185, 235};
constexpr Rgb kFloor = {95, 75, 55};

// Silver column occupies the middle cells of each wall.
bool is_silver_section(int along) { return along == kPenSize / 2 - 1 || along == kPenSize / 2; }

Rgb attenuate(Rgb c, double dist) {
  const double f = 1.0 / (1.0 + dist / 8.0);
  return {static_cast<std::uint8_t>(std::lround(c.r * f)),
          static_cast<std::uint8_t>(std::lround(c.g * f)),
          static_cast<std::uint8_t>(std::lround(c.b * f))};
}

void put(Image& img, int r, int c, Rgb v) {
  auto* p = img.px(r, c);
  p[0] = v.r;
  p[1] = v.g;
  p[2] = v.b;
}

}  // namespace

Heading turn_left(Heading h) { return static_cast<Heading>((static_cast<int>(h) + 3) % 4); }
Heading turn_right(Heading h) { return static_cast<Heading>((static_cast<int>(h) + 1) % 4); }

std::pair<int, int> heading_delta(Heading h) {
  switch (h) {
    case Heading::North: return {-1, 0};
    case Heading::East: return {0, 1};
    case Heading::South: return {1, 0};
    case Heading::West: return {0, -1};
  }
  return {0, 0};
}

bool is_interior(int row, int col) {
  return row >= 0 && row < kPenSize && col >= 0 && col < kPenSize;
}

Observation observe(const GridPenState& state) {
  Observation obs;
  obs.pixels = render(state);
  const auto [dr, dc] = heading_delta(state.heading);
  obs.touch = is_interior(state.row + dr, state.col + dc) ? 0 : 1;
  return obs;
}

std::pair<GridPenState, Observation> gridpen_step(const GridPenState& state, Action action) {
  GridPenState next = state;
  switch (action) {
    case Action::Forward: {
      const auto [dr, dc] = heading_delta(state.heading);
      if (is_interior(state.row + dr, state.col + dc)) {
        next.row += dr;
        next.col += dc;
      }
      break;
    }
    case Action::TurnLeft:
      next.heading = turn_left(state.heading);
      break;
    case Action::TurnRight:
      next.heading = turn_right(state.heading);
      break;
  }
  return {next, observe(next)};
}

Image render(const GridPenState& state) {
  Image img(kImageRows, kImageCols);

  const double px = state.col + 0.5;
  const double py = state.row + 0.5;
  const auto [hdr, hdc] = heading_delta(state.heading);
  const double dirx = hdc, diry = hdr;
  // Camera plane perpendicular to the view direction; |plane| = tan(45 deg).
  const double planex = -diry, planey = dirx;

  for (int x = 0; x < kImageCols; ++x) {
    const double cam = 2.0 * (x + 0.5) / kImageCols - 1.0;
    const double rx = dirx + planex * cam;
    const double ry = diry + planey * cam;

    int cx = state.col, cy = state.row;
    const int stepx = rx < 0 ? -1 : 1;
    const int stepy = ry < 0 ? -1 : 1;
    const double ddx = rx == 0.0 ? 1e30 : std::abs(1.0 / rx);
    const double ddy = ry == 0.0 ? 1e30 : std::abs(1.0 / ry);
    double sidex = rx < 0 ? (px - cx) * ddx : (cx + 1.0 - px) * ddx;
    double sidey = ry < 0 ? (py - cy) * ddy : (cy + 1.0 - py) * ddy;

    int side = 0;  // 0: crossed a column boundary, 1: crossed a row boundary
    while (is_interior(cy, cx)) {
      if (sidex < sidey) {
        sidex += ddx;
        cx += stepx;
        side = 0;
      } else {
        sidey += ddy;
        cy += stepy;
        side = 1;
      }
    }

    double perp;
    Heading wall;
    int along;
    if (side == 0) {
      perp = sidex - ddx;
      wall = stepx > 0 ? Heading::East : Heading::West;
      along = cy;
    } else {
      perp = sidey - ddy;
      wall = stepy > 0 ? Heading::South : Heading::North;
      along = cx;
    }
    if (perp < 0.05) perp = 0.05;

    const Rgb base = is_silver_section(along) ? kSilver : kWallBase[static_cast<int>(wall)];
    const Rgb shade = attenuate(base, perp);

    const int half =
        std::min<long>(kImageRows / 2, std::lround(22.0 / std::max(perp, 0.5)));
    const int top = kImageRows / 2 - static_cast<int>(half);
    const int bot = kImageRows / 2 + static_cast<int>(half);
    for (int y = 0; y < kImageRows; ++y) {
      if (y < top) put(img, y, x, kSky);
      else if (y < bot) put(img, y, x, shade);
      else put(img, y, x, kFloor);
    }
  }
  return img;
}

std::pair<Action, double> behavior_policy(Rng& rng, const GridPenState& /*state*/) {
  const double u = rng.uniform();
  if (u < 0.5) return {Action::Forward, 0.5};
  if (u < 0.75) return {Action::TurnLeft, 0.25};
  return {Action::TurnRight, 0.25};
}

VignetteScript script_approach_and_turn(Heading wall, int lateral, int distance, int steps) {
  if (lateral < 0 || lateral >= kPenSize) throw ConfigError("vignette: lateral out of range");
  if (distance < 1 || distance >= kPenSize) throw ConfigError("vignette: bad spawn distance");

  VignetteScript script;
  script.spawn.heading = wall;
  switch (wall) {
    case Heading::North: script.spawn.row = distance - 1; script.spawn.col = lateral; break;
    case Heading::South: script.spawn.row = kPenSize - distance; script.spawn.col = lateral; break;
    case Heading::West: script.spawn.col = distance - 1; script.spawn.row = lateral; break;
    case Heading::East: script.spawn.col = kPenSize - distance; script.spawn.row = lateral; break;
  }

  // Forward until the cell ahead is the wall, one left turn, forward after.
  GridPenState s = script.spawn;
  bool turned = false;
  for (int k = 0; k < steps; ++k) {
    Action a;
    if (!turned) {
      const auto [dr, dc] = heading_delta(s.heading);
      if (!is_interior(s.row + dr, s.col + dc)) {
        a = Action::TurnLeft;
        turned = true;
      } else {
        a = Action::Forward;
      }
    } else {
      a = Action::Forward;
    }
    script.actions.push_back(a);
    s = gridpen_step(s, a).first;
  }
  return script;
}

}  // namespace gvflab
