#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "gvflab/gridpen.hpp"
#include "gvflab/oracles.hpp"
#include "gvflab/pulse.hpp"

using namespace gvflab;

TEST_CASE("pulse_cumulant: edges and periodicity") {
  PulseConfig cfg;
  CHECK(pulse_cumulant(0, cfg) == 1);
  CHECK(pulse_cumulant(19, cfg) == 1);
  CHECK(pulse_cumulant(20, cfg) == 0);
  CHECK(pulse_cumulant(79, cfg) == 0);
  CHECK(pulse_cumulant(80, cfg) == 1);
}

TEST_CASE("pulse_true_return: geometric limits inside long segments") {
  PulseConfig cfg;
  cfg.period = 200;
  cfg.width = 100;
  cfg.gamma = 0.3;
  // Deep inside the high segment the return is the full geometric series.
  CHECK(pulse_true_return(10, cfg) == doctest::Approx(1.0 / 0.7).epsilon(1e-9));
  // Deep inside the low segment it is zero.
  CHECK(pulse_true_return(120, cfg) == doctest::Approx(0.0));
}

TEST_CASE("pulse_true_return satisfies the Bellman identity") {
  PulseConfig cfg;
  CHECK(oracles::pulse_bellman_residual(cfg, 2 * cfg.period) <= 1e-12);
}

TEST_CASE("reference_estimates: tracking lags by one step") {
  PulseConfig cfg;
  CHECK(reference_estimates(80, cfg).tracking == 0.0);
  CHECK(reference_estimates(81, cfg).tracking == 1.0);
  CHECK(reference_estimates(20, cfg).tracking == 1.0);
  CHECK(reference_estimates(21, cfg).tracking == 0.0);
}

TEST_CASE("reference_estimates: anticipatory estimate leads the rise") {
  PulseConfig cfg;
  CHECK(reference_estimates(80 - cfg.lead, cfg).anticipatory > 0.5);
  // and drops before the fall
  CHECK(reference_estimates(20 - cfg.lead, cfg).anticipatory < 0.5);
}

TEST_CASE("tracking beats anticipatory on cumulative squared return error") {
  PulseConfig cfg;
  double track = 0.0, antic = 0.0;
  for (std::int64_t t = 1; t <= 10 * cfg.period; ++t) {
    const double g_norm = (1.0 - cfg.gamma) * pulse_true_return(t, cfg);
    const auto est = reference_estimates(t, cfg);
    track += (g_norm - est.tracking) * (g_norm - est.tracking);
    antic += (g_norm - est.anticipatory) * (g_norm - est.anticipatory);
  }
  CHECK(track < antic);
}

TEST_CASE("gridpen_step: blocked moves, turns, and free moves") {
  GridPenState at_wall{0, 10, Heading::North};
  const auto [blocked, obs_blocked] = gridpen_step(at_wall, Action::Forward);
  CHECK(blocked == at_wall);
  CHECK(obs_blocked.touch == 1);

  GridPenState center{15, 15, Heading::North};
  const auto [turned, obs_turned] = gridpen_step(center, Action::TurnLeft);
  CHECK(turned.heading == Heading::West);
  CHECK(turned.row == 15);

  const auto [moved, obs_moved] = gridpen_step(center, Action::Forward);
  CHECK(moved.row == 14);
  CHECK(moved.col == 15);
  CHECK(obs_moved.touch == 0);
}

TEST_CASE("gridpen dynamics never leave the interior") {
  Rng rng(17);
  GridPenState s;
  for (int t = 0; t < 5000; ++t) {
    const auto [a, prob] = behavior_policy(rng, s);
    CHECK(prob > 0.0);
    s = gridpen_step(s, a).first;
    CHECK(is_interior(s.row, s.col));
  }
}

TEST_CASE("render is deterministic") {
  GridPenState s{3, 20, Heading::East};
  const Image a = render(s);
  const Image b = render(s);
  CHECK(a.data == b.data);
  CHECK(a.rows == kImageRows);
  CHECK(a.cols == kImageCols);
}

TEST_CASE("render: a close wall dominates the image with its color") {
  // One cell between the agent and the north wall: perpendicular distance
  // 1.5 from the cell center for every column at this pose.
  GridPenState s{1, 7, Heading::North};
  const Image img = render(s);

  // expected attenuated north base color at that distance
  const double f = 1.0 / (1.0 + 1.5 / 8.0);
  const std::array<int, 3> expect{static_cast<int>(std::lround(30 * f)),
                                  static_cast<int>(std::lround(60 * f)),
                                  static_cast<int>(std::lround(220 * f))};
  int hits = 0;
  for (int r = 0; r < kImageRows; ++r)
    for (int c = 0; c < kImageCols; ++c) {
      const auto* p = img.px(r, c);
      if (p[0] == expect[0] && p[1] == expect[1] && p[2] == expect[2]) ++hits;
    }
  CHECK(hits >= static_cast<int>(0.6 * kImageRows * kImageCols));
}

TEST_CASE("render: the four walls have distinct dominant colors from the center") {
  std::set<std::array<int, 3>> dominant;
  for (Heading h : {Heading::North, Heading::East, Heading::South, Heading::West}) {
    GridPenState s{15, 15, h};
    const Image img = render(s);
    // dominant color of the middle row, always inside the wall band
    std::map<std::array<int, 3>, int> counts;
    for (int c = 0; c < kImageCols; ++c) {
      const auto* p = img.px(kImageRows / 2, c);
      ++counts[{p[0], p[1], p[2]}];
    }
    const auto best = std::max_element(counts.begin(), counts.end(),
                                       [](const auto& a, const auto& b) {
                                         return a.second < b.second;
                                       });
    dominant.insert(best->first);
  }
  CHECK(dominant.size() == 4);
}

TEST_CASE("behavior_policy: declared probabilities match empirical frequencies") {
  Rng rng(99);
  GridPenState s;
  std::array<int, 3> counts{0, 0, 0};
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    const auto [a, prob] = behavior_policy(rng, s);
    ++counts[static_cast<int>(a)];
    if (a == Action::Forward) CHECK(prob == 0.5);
    else CHECK(prob == 0.25);
  }
  CHECK(std::abs(counts[0] / double(n) - 0.5) < 0.01);
  CHECK(std::abs(counts[1] / double(n) - 0.25) < 0.01);
  CHECK(std::abs(counts[2] / double(n) - 0.25) < 0.01);
}

TEST_CASE("vignette script approaches, touches, then turns left") {
  const auto script = script_approach_and_turn(Heading::North, 7);
  REQUIRE(script.actions.size() == 10);
  GridPenState s = script.spawn;
  bool saw_touch = false;
  bool turned = false;
  for (Action a : script.actions) {
    if (a == Action::TurnLeft) {
      CHECK(saw_touch);  // only turns after contact
      turned = true;
    }
    const auto [next, obs] = gridpen_step(s, a);
    s = next;
    if (obs.touch == 1 && !turned) saw_touch = true;
  }
  CHECK(turned);
}
