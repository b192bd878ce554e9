#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gvflab/core.hpp"
#include "gvflab/rng.hpp"
#include "gvflab/tile_coder.hpp"

namespace gvflab {

/// Single always-on feature. A linear value function over it can only
/// represent a constant estimate.
inline FeatureVector bias_bit() { return FeatureVector::bias(); }

/// Fixed set of pixel locations sampled once per trial, then frozen.
/// Each location yields the RGB mean scaled into [0, 1).
class PixelSubsampler {
 public:
  PixelSubsampler(std::vector<std::pair<int, int>> locations, int image_rows, int image_cols);

  /// Draw `count` distinct locations from the trial RNG.
  static PixelSubsampler random(Rng& rng, int image_rows, int image_cols, int count = 100);

  int count() const { return static_cast<int>(locations_.size()); }
  const std::vector<std::pair<int, int>>& locations() const { return locations_; }

  /// One channel-reduced value per location, in [0, 1).
  std::vector<double> sample(const Observation& obs) const;
  void sample_into(const Observation& obs, std::vector<double>& out) const;

 private:
  std::vector<std::pair<int, int>> locations_;
  int rows_;
  int cols_;
};

inline std::vector<double> subsample(const PixelSubsampler& sampler, const Observation& obs) {
  return sampler.sample(obs);
}

/// Tile-coded layer-1 state: subsampled pixels plus the touch bit.
FeatureVector layer1_encode(const PixelSubsampler& sampler, const TileCoderConfig& tc,
                            const Observation& obs);

/// Tile-coded layer-2 state: subsampled pixels, touch bit, and the
/// lower-layer touch prediction, all tiled together.
FeatureVector layer2_encode(const PixelSubsampler& sampler, const TileCoderConfig& tc,
                            const Observation& obs, double touch_prediction);

}  // namespace gvflab
