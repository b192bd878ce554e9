#include <doctest.h>

#include <cmath>
#include <set>
#include <utility>

#include "gvflab/learner.hpp"
#include "gvflab/repr.hpp"

using namespace gvflab;

namespace {

Observation solid_image(std::uint8_t level, int touch = 0) {
  Observation o;
  o.pixels = Image(48, 64);
  for (auto& b : o.pixels.data) b = level;
  o.touch = touch;
  return o;
}

}  // namespace

TEST_CASE("tile_code: direct indexing on a small unhashed grid") {
  TileCoderConfig cfg = TileCoderConfig::uniform(1, 1, 4, 4, 0);
  cfg.validate();
  const double lo = 0.3;
  CHECK(tile_code(cfg, std::vector<double>{lo}).active == std::vector<std::uint32_t>{1});
  CHECK(tile_code(cfg, std::vector<double>{0.99}).active == std::vector<std::uint32_t>{3});
  CHECK(tile_code(cfg, std::vector<double>{0.99}).dim == 4);
}

TEST_CASE("tile_code: always exactly num_tilings active indices") {
  const TileCoderConfig cfg = TileCoderConfig::uniform(3, 8, 4, 1u << 12, 77);
  for (double x : {0.0, 0.4, 0.999, -3.0, 12.0}) {
    const auto fv = tile_code(cfg, std::vector<double>{x, 0.5 * x + 0.1, 0.9});
    CHECK(fv.active.size() == 8);
    CHECK_NOTHROW(fv.check());
  }
}

TEST_CASE("tile_code: deterministic and translation-consistent") {
  const TileCoderConfig cfg = TileCoderConfig::uniform(2, 8, 4, 1u << 10, 5);
  const std::vector<double> a{0.21, 0.61};
  CHECK(tile_code(cfg, a) == tile_code(cfg, a));

  // Points inside the same tile on every tiling encode identically. With 4
  // tiles and 8 tilings the offset grid has pitch 1/32 in unit coordinates,
  // so points within the same 1/32 cell land in identical tiles everywhere.
  const std::vector<double> b{0.2101, 0.6101};
  CHECK(tile_code(cfg, a) == tile_code(cfg, b));
}

TEST_CASE("tile_code: clipping keeps out-of-range inputs in the edge tiles") {
  TileCoderConfig cfg = TileCoderConfig::uniform(1, 1, 4, 4, 0);
  CHECK(tile_code(cfg, std::vector<double>{-5.0}).active == std::vector<std::uint32_t>{0});
  CHECK(tile_code(cfg, std::vector<double>{500.0}).active == std::vector<std::uint32_t>{3});
}

TEST_CASE("tile_code rejects dimension mismatch") {
  const TileCoderConfig cfg = TileCoderConfig::uniform(2, 2, 4, 64, 0);
  CHECK_THROWS_AS(tile_code(cfg, std::vector<double>{0.5}), ConfigError);
}

TEST_CASE("bias_bit is a single constant feature") {
  const FeatureVector fv = bias_bit();
  CHECK(fv.dim == 1);
  CHECK(fv.active == std::vector<std::uint32_t>{0});
  CHECK(bias_bit() == fv);

  // A linear value function over it can only output its single weight.
  const std::vector<double> w{0.5};
  CHECK(predict(w, fv) == doctest::Approx(0.5));
}

TEST_CASE("subsample: channel reduction and determinism") {
  Rng rng(3);
  const auto sampler = PixelSubsampler::random(rng, 48, 64, 100);
  CHECK(sampler.count() == 100);

  const auto black = subsample(sampler, solid_image(0));
  CHECK(black.size() == 100);
  for (double v : black) CHECK(v == 0.0);

  const auto white = subsample(sampler, solid_image(255));
  for (double v : white) CHECK(v == doctest::Approx(255.0 / 256.0));

  CHECK(subsample(sampler, solid_image(137)) == subsample(sampler, solid_image(137)));
}

TEST_CASE("subsample locations are distinct and in bounds") {
  Rng rng(12345);
  const auto sampler = PixelSubsampler::random(rng, 48, 64, 100);
  std::set<std::pair<int, int>> seen(sampler.locations().begin(), sampler.locations().end());
  CHECK(seen.size() == 100);
  for (const auto& [r, c] : sampler.locations()) {
    CHECK(r >= 0);
    CHECK(r < 48);
    CHECK(c >= 0);
    CHECK(c < 64);
  }
}

TEST_CASE("subsampler rejects out-of-bounds locations") {
  CHECK_THROWS_AS(PixelSubsampler({{48, 0}}, 48, 64), ConfigError);
}

TEST_CASE("layer2_encode folds the touch prediction into the features") {
  Rng rng(9);
  const auto sampler = PixelSubsampler::random(rng, 48, 64, 100);
  const TileCoderConfig tc = TileCoderConfig::uniform(102, 8, 4, 1u << 15, rng.next_u64());
  const Observation obs = solid_image(80, 0);

  const auto lo = layer2_encode(sampler, tc, obs, 0.0);
  const auto hi = layer2_encode(sampler, tc, obs, 1.0);
  CHECK(lo.active.size() == 8);
  CHECK(hi.active.size() == 8);
  CHECK(lo != hi);
  CHECK(layer2_encode(sampler, tc, obs, 1.0) == hi);
  CHECK_THROWS_AS(layer2_encode(sampler, tc, obs, NAN), NumericalError);
}
