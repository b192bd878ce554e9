#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gvflab/feature.hpp"

namespace gvflab {

/// Grid tile coder over a box of continuous inputs. Each tiling owns a
/// disjoint segment of the index space [0, hash_size), so the output always
/// has exactly num_tilings distinct active indices. Within a segment the
/// tile coordinate is used directly when the grid fits, and hashed down
/// deterministically (seeded) otherwise.
struct TileCoderConfig {
  int num_tilings = 8;
  std::vector<int> tiles_per_dim;                    // one entry per input dimension
  std::vector<std::pair<double, double>> input_ranges;  // [lo, hi) per dimension
  std::uint32_t hash_size = 1u << 15;
  std::uint64_t seed = 0;

  static TileCoderConfig uniform(int dims, int tilings, int tiles,
                                 std::uint32_t hash_size, std::uint64_t seed);

  void validate() const;

  bool operator==(const TileCoderConfig&) const = default;
};

/// Encode a point. Inputs outside their declared range are clipped.
FeatureVector tile_code(const TileCoderConfig& config, std::span<const double> inputs);

}  // namespace gvflab
