#pragma once

#include "spraylab/types.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace spraylab {

/// Haar-distributed element of O(n): Gaussian matrix, QR, diagonal sign correction.
Mat random_orthogonal(int n, std::uint64_t seed);
Mat random_orthogonal(int n, std::mt19937_64& rng);

struct SamplePlan {
  int dim = 3;
  int count = 100;
  std::uint64_t seed = 1;
  double radius = 1.0;          // x drawn uniformly in the ball |x| < radius
  double min_angle = 1e-2;      // reject near-collinear x, y
  double y_scale_lo = 0.5;      // |y| uniform in [lo, hi]
  double y_scale_hi = 2.0;
};

/// Seeded pairs: x uniform in the ball (rejection), y uniform on the sphere times
/// a uniform scale. `accept` adds a domain filter (e.g. a spray's (x, y) domain).
std::vector<PointPair> sample_pairs(const SamplePlan& plan,
                                    const std::function<bool(const PointPair&)>& accept = {});

/// Unit vector orthogonal to y (Euclidean), drawn uniformly.
Vec random_orthogonal_direction(const Vec& y, std::mt19937_64& rng);

}  // namespace spraylab
