#pragma once

#include "spraylab/curvature.hpp"
#include "spraylab/metric.hpp"

#include <memory>
#include <vector>

namespace spraylab {

/// F = |y|
FinslerMetric minkowski_metric(int dim);

/// F = √(|y|² + μ(|x|²|y|² − ⟨x,y⟩²)) / (1 + μ|x|²) on 1 + μ|x|² > 0; K = μ.
FinslerMetric spaceform_metric(int dim, double mu);

/// F = (√(⟨x,y⟩² + (1 − |x|²)|y|²) + ⟨x,y⟩) / (1 − |x|²) on |x| < 1; K = −1/4.
FinslerMetric funk_metric(int dim);

/// F = (Q ± ⟨x,y⟩)² / ((c − |x|²)² Q), Q = √((c − |x|²)|y|² + ⟨x,y⟩²), on |x|² < c; K = 0.
FinslerMetric berwald_metric(int dim, double c, bool plus);

struct FundamentalTensor {
  Mat g;
  Mat g_inv;
  bool positive_definite = false;
};

/// g_ij = ½ ∂²F²/∂y^i∂y^j, symmetrized. Throws SingularTensor when not invertible.
FundamentalTensor fundamental_tensor(const FinslerMetric& metric, const PointPair& pair,
                                     const DerivativeEngine& engine);

/// G^i = ¼ g^{il} (∂²F²/∂x^k∂y^l y^k − ∂F²/∂x^l)
Vec induced_spray(const FinslerMetric& metric, const PointPair& pair, const DerivativeEngine& engine);

/// Spray field of the metric. Plain evaluation goes through `engine`; when the
/// metric has a second-level dual evaluator the field also gets exact dual
/// evaluation, so the dual engine can differentiate it again.
SprayField induced_spray_field(const FinslerMetric& metric, std::shared_ptr<const DerivativeEngine> engine);

/// K(y, u) = g(R(u), u) / (g(y,y)g(u,u) − g(y,u)²) with R from the induced spray.
/// Throws DegenerateFlag when u is (nearly) parallel to y.
double flag_curvature(const FinslerMetric& metric, const PointPair& pair, const Vec& u,
                      const DerivativeEngine& engine);

struct MetrizabilityReport {
  double lambda = 0.0;               // mean of R/F²
  double constancy_residual = 0.0;   // max |R/F² − λ|
  std::vector<double> values;        // R/F² per sample
  bool constancy_meaningful = false; // the test is only informative for n ≥ 3
};

/// Fits R = λF² for a spray of scalar curvature R^i_k = Rδ^i_k − τ_k y^i, with R
/// read off as the trace over (n − 1) minus the y-projected part.
MetrizabilityReport metrizability_scalar_check(const SprayField& spray, const FinslerMetric& metric,
                                               const std::vector<PointPair>& samples,
                                               const DerivativeEngine& engine);

/// λ = (P² − P_{x^k} y^k) / F² for G = P y with P = |y| p(r, s).
double projective_lambda(const ProjectiveProfile& profile, const FinslerMetric& metric, const PointPair& pair);

}  // namespace spraylab
