#include "gvflab/tile_coder.hpp"

#include <algorithm>
#include <cmath>

#include "gvflab/rng.hpp"

namespace gvflab {

TileCoderConfig TileCoderConfig::uniform(int dims, int tilings, int tiles,
                                         std::uint32_t hash_size, std::uint64_t seed) {
  TileCoderConfig cfg;
  cfg.num_tilings = tilings;
  cfg.tiles_per_dim.assign(dims, tiles);
  cfg.input_ranges.assign(dims, {0.0, 1.0});
  cfg.hash_size = hash_size;
  cfg.seed = seed;
  return cfg;
}

void TileCoderConfig::validate() const {
  if (num_tilings < 1) throw ConfigError("tile coder: num_tilings must be >= 1");
  if (tiles_per_dim.empty()) throw ConfigError("tile coder: no input dimensions declared");
  if (tiles_per_dim.size() != input_ranges.size())
    throw ConfigError("tile coder: tiles_per_dim and input_ranges must have equal length");
  for (int t : tiles_per_dim)
    if (t < 1) throw ConfigError("tile coder: tiles_per_dim entries must be >= 1");
  for (const auto& [lo, hi] : input_ranges)
    if (!(hi > lo)) throw ConfigError("tile coder: input range must satisfy hi > lo");
  if (hash_size < static_cast<std::uint32_t>(num_tilings))
    throw ConfigError("tile coder: hash_size must be >= num_tilings");
}

FeatureVector tile_code(const TileCoderConfig& config, std::span<const double> inputs) {
  if (inputs.size() != config.tiles_per_dim.size())
    throw ConfigError("tile coder: input dimension mismatch");

  const int dims = static_cast<int>(inputs.size());
  const int k = config.num_tilings;
  const std::uint32_t segment = config.hash_size / static_cast<std::uint32_t>(k);

  // Offset tilings need one extra tile per dimension to cover the box.
  std::uint64_t cells = 1;
  bool direct = true;
  for (int d = 0; d < dims; ++d) {
    const std::uint64_t grid = static_cast<std::uint64_t>(config.tiles_per_dim[d]) + (k > 1 ? 1 : 0);
    cells *= grid;
    if (cells > segment) { direct = false; break; }
  }

  // Unit coordinates, clipped to [0, 1).
  std::vector<double> scaled(dims);
  for (int d = 0; d < dims; ++d) {
    const auto& [lo, hi] = config.input_ranges[d];
    double u = (inputs[d] - lo) / (hi - lo);
    u = std::clamp(u, 0.0, 1.0 - 1e-12);
    scaled[d] = u * config.tiles_per_dim[d];
  }

  FeatureVector out;
  out.dim = config.hash_size;
  out.active.reserve(k);

  std::vector<std::uint32_t> coord(dims);
  for (int tiling = 0; tiling < k; ++tiling) {
    const double offset = static_cast<double>(tiling) / k;
    for (int d = 0; d < dims; ++d)
      coord[d] = static_cast<std::uint32_t>(std::floor(scaled[d] + offset));

    std::uint32_t local;
    if (direct) {
      std::uint64_t linear = 0;
      for (int d = 0; d < dims; ++d) {
        const std::uint64_t grid = static_cast<std::uint64_t>(config.tiles_per_dim[d]) + (k > 1 ? 1 : 0);
        linear = linear * grid + coord[d];
      }
      local = static_cast<std::uint32_t>(linear);
    } else {
      std::uint64_t h = splitmix64(config.seed ^ (0x632BE59BD9B4E019ull * (tiling + 1)));
      for (int d = 0; d < dims; ++d) h = splitmix64(h ^ (coord[d] + 1));
      local = static_cast<std::uint32_t>(h % segment);
    }
    out.active.push_back(static_cast<std::uint32_t>(tiling) * segment + local);
  }
  return out;
}

}  // namespace gvflab
