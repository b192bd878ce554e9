#pragma once

#include <cstdint>
#include <vector>

#include "gvflab/errors.hpp"

namespace gvflab {

/// Sparse binary feature vector: value 1 at the listed indices, 0 elsewhere.
/// Indices are strictly increasing and all less than dim.
struct FeatureVector {
  std::vector<std::uint32_t> active;
  std::uint32_t dim = 0;

  static FeatureVector bias() { return {{0}, 1}; }

  void check() const {
    std::uint32_t prev = 0;
    bool first = true;
    for (std::uint32_t i : active) {
      if (!first && i <= prev) throw ConfigError("feature indices must be strictly increasing");
      if (i >= dim) throw ConfigError("feature index out of range");
      prev = i;
      first = false;
    }
  }

  bool operator==(const FeatureVector&) const = default;
};

/// Number of common active indices of two sorted feature vectors.
inline int active_overlap(const FeatureVector& a, const FeatureVector& b) {
  int n = 0;
  std::size_t i = 0, j = 0;
  while (i < a.active.size() && j < b.active.size()) {
    if (a.active[i] < b.active[j]) ++i;
    else if (a.active[i] > b.active[j]) ++j;
    else { ++n; ++i; ++j; }
  }
  return n;
}

}  // namespace gvflab
