#pragma once

#include "spraylab/types.hpp"

namespace spraylab {

/// r = |x|², s = ⟨x,y⟩/|y|.
struct InvariantCoords {
  double r = 0.0;
  double s = 0.0;
};

/// First and second partials of r and s with respect to x and y.
struct InvariantPartials {
  double norm_y = 0.0;  // |y|
  double xy = 0.0;      // ⟨x,y⟩
  Vec dr_dx;            // 2 x_k
  Vec ds_dx;            // y_k / |y|
  Vec ds_dy;            // (x_k|y|² − y_k⟨x,y⟩) / |y|³
  Mat d2s_dxdy;         // (j,k): (δ_jk|y|² − y_j y_k) / |y|³
  Mat d2s_dydy;         // (j,k): −⟨x,y⟩δ_jk/|y|³ + (3⟨x,y⟩y_j y_k − |y|²(x_k y_j + x_j y_k)) / |y|⁵
};

/// Throws ZeroDirection when |y| = 0.
InvariantCoords invariants(const PointPair& pair);

InvariantPartials invariant_partials(const PointPair& pair);

}  // namespace spraylab
