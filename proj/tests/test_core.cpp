#include <doctest.h>

#include "gvflab/core.hpp"
#include "gvflab/rng.hpp"

using namespace gvflab;

namespace {

Observation make_obs(int touch) {
  Observation o;
  o.pixels = Image(2, 2);
  o.touch = touch;
  return o;
}

Transition make_transition(int touch_next, Action a = Action::Forward, double prob = 0.5) {
  return Transition{make_obs(0), a, make_obs(touch_next), prob};
}

}  // namespace

TEST_CASE("cumulant_value reads the touch bit of the next observation") {
  const auto spec = CumulantSpec::touch_bit();
  CHECK(cumulant_value(spec, make_transition(1), {}) == 1.0);
  CHECK(cumulant_value(spec, make_transition(0), {}) == 0.0);
}

TEST_CASE("cumulant_value reads a lower-layer prediction by id") {
  const auto spec = CumulantSpec::prediction("touch");
  std::map<std::string, double> lower{{"touch", 0.42}};
  CHECK(cumulant_value(spec, make_transition(0), lower) == doctest::Approx(0.42));
}

TEST_CASE("cumulant_value rejects a missing prediction reference") {
  const auto spec = CumulantSpec::prediction("touch");
  CHECK_THROWS_WITH_AS(cumulant_value(spec, make_transition(0), {}),
                       doctest::Contains("touch"), ConfigError);
}

TEST_CASE("discount_value: constant and termination-on-contact") {
  CHECK(discount_value(DiscountSpec::constant(0.3), make_obs(0)) == doctest::Approx(0.3));
  CHECK(discount_value(DiscountSpec::constant(0.3), make_obs(1)) == doctest::Approx(0.3));
  const auto term = DiscountSpec::terminate_on_contact(0.8);
  CHECK(discount_value(term, make_obs(1)) == 0.0);
  CHECK(discount_value(term, make_obs(0)) == doctest::Approx(0.8));
}

TEST_CASE("discount_value stays in [0,1] for valid specs") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto spec = rng.uniform() < 0.5 ? DiscountSpec::constant(rng.uniform())
                                          : DiscountSpec::terminate_on_contact(rng.uniform());
    const double g = discount_value(spec, make_obs(static_cast<int>(rng.below(2))));
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
  }
}

TEST_CASE("importance_ratio basics") {
  const auto fwd = PolicySpec::deterministic(Action::Forward);
  const auto uni = PolicySpec::uniform();
  const Observation obs = make_obs(0);
  CHECK(importance_ratio(fwd, uni, obs, Action::Forward) == doctest::Approx(3.0));
  CHECK(importance_ratio(fwd, uni, obs, Action::TurnLeft) == 0.0);
  CHECK(importance_ratio(uni, uni, obs, Action::TurnRight) == doctest::Approx(1.0));
}

TEST_CASE("importance_ratio of a policy with itself is 1 for every action") {
  const PolicySpec pols[] = {PolicySpec::uniform(), PolicySpec::table({0.5, 0.25, 0.25}),
                             PolicySpec::table({0.2, 0.3, 0.5})};
  const Observation obs = make_obs(0);
  for (const auto& p : pols)
    for (Action a : {Action::Forward, Action::TurnLeft, Action::TurnRight})
      CHECK(importance_ratio(p, p, obs, a) == doctest::Approx(1.0));
}

TEST_CASE("importance_ratio rejects unsupported actions") {
  const auto fwd = PolicySpec::deterministic(Action::Forward);
  CHECK_THROWS_AS(importance_ratio(fwd, fwd, make_obs(0), Action::TurnLeft), SupportError);
}

TEST_CASE("policy table validation") {
  CHECK_THROWS_AS(PolicySpec::table({0.5, 0.5, 0.1}), ConfigError);
  CHECK_THROWS_AS(PolicySpec::table({1.2, -0.2, 0.0}), ConfigError);
  const auto p = PolicySpec::table({0.5, 0.25, 0.25});
  CHECK(p.prob(Action::Forward) + p.prob(Action::TurnLeft) + p.prob(Action::TurnRight) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("answer validation enforces positivity") {
  GvfAnswer a;
  a.lambda = 1.5;
  CHECK_THROWS_AS(a.validate(), ConfigError);
  a.lambda = 0.9;
  a.tau = 0.0;
  CHECK_THROWS_AS(a.validate(), ConfigError);
  a.tau = 1e4;
  a.alpha_init = -1.0;
  CHECK_THROWS_AS(a.validate(), ConfigError);
  a.alpha_init = 0.1;
  CHECK_NOTHROW(a.validate());
}
