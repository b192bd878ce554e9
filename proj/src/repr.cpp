#include "gvflab/repr.hpp"

#include <cmath>

namespace gvflab {

PixelSubsampler::PixelSubsampler(std::vector<std::pair<int, int>> locations,
                                 int image_rows, int image_cols)
    : locations_(std::move(locations)), rows_(image_rows), cols_(image_cols) {
  if (locations_.empty()) throw ConfigError("subsampler: no locations");
  for (const auto& [r, c] : locations_)
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw ConfigError("subsampler: location out of image bounds");
}

PixelSubsampler PixelSubsampler::random(Rng& rng, int image_rows, int image_cols, int count) {
  const int total = image_rows * image_cols;
  if (count < 1 || count > total) throw ConfigError("subsampler: invalid location count");
  // Partial Fisher-Yates over the flattened pixel grid gives distinct cells.
  std::vector<int> cells(total);
  for (int i = 0; i < total; ++i) cells[i] = i;
  std::vector<std::pair<int, int>> locs;
  locs.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(total - i)));
    std::swap(cells[i], cells[j]);
    locs.emplace_back(cells[i] / image_cols, cells[i] % image_cols);
  }
  return PixelSubsampler(std::move(locs), image_rows, image_cols);
}

std::vector<double> PixelSubsampler::sample(const Observation& obs) const {
  std::vector<double> out;
  sample_into(obs, out);
  return out;
}

void PixelSubsampler::sample_into(const Observation& obs, std::vector<double>& out) const {
  if (obs.pixels.rows != rows_ || obs.pixels.cols != cols_)
    throw ConfigError("subsampler: image dimensions do not match sampler bounds");
  out.resize(locations_.size());
  for (std::size_t i = 0; i < locations_.size(); ++i) {
    const auto* p = obs.pixels.px(locations_[i].first, locations_[i].second);
    const double mean = (static_cast<double>(p[0]) + p[1] + p[2]) / 3.0;
    out[i] = mean / 256.0;
  }
}

FeatureVector layer1_encode(const PixelSubsampler& sampler, const TileCoderConfig& tc,
                            const Observation& obs) {
  std::vector<double> inputs;
  sampler.sample_into(obs, inputs);
  inputs.push_back(static_cast<double>(obs.touch));
  return tile_code(tc, inputs);
}

FeatureVector layer2_encode(const PixelSubsampler& sampler, const TileCoderConfig& tc,
                            const Observation& obs, double touch_prediction) {
  if (!std::isfinite(touch_prediction))
    throw NumericalError("layer2_encode: non-finite touch prediction");
  std::vector<double> inputs;
  sampler.sample_into(obs, inputs);
  inputs.push_back(static_cast<double>(obs.touch));
  inputs.push_back(touch_prediction);
  return tile_code(tc, inputs);
}

}  // namespace gvflab
