#pragma once

#include "spraylab/families.hpp"

#include <vector>

namespace spraylab {

/// The two scalar equations for Γ = |y|γ(r,s), θ = a(r)⟨x,y⟩ on G = |y| p y.
struct WeakIsoResiduals {
  double res1 = 0.0;  // 2sγp_rs + γp_ss + (2sp_r − p² + p_s)γ_s − (−pp_s + 4p_r)γ
  double res2 = 0.0;  // a s γ_s − 2s p_rs − a γ + 2p_r − p_ss
};

WeakIsoResiduals weak_iso_residuals(const Jet2RS& p, const Jet2RS& gamma, double a, double s);

/// Component vectors of Γ_{y^k}R − τ_kΓ and τ_k − ½R_{y^k} − (3/2)(Γ_{y^k}θ − Γθ_k),
/// with R, τ from the closed form and every y-derivative by the chain rule.
struct AmbientWeakIso {
  Vec res_a9;
  Vec res_a10;
  double scale = 1.0;  // |y|(1 + |R|/|y|² + ‖τ‖/|y|)

  double normalized_a9() const { return res_a9.lpNorm<Eigen::Infinity>() / scale; }
  double normalized_a10() const { return res_a10.lpNorm<Eigen::Infinity>() / scale; }
};

AmbientWeakIso ambient_weakiso_check(const ProjectiveProfile& p, const WeakIsoWitness& witness,
                                     const PointPair& pair);

struct RSPoint {
  double r = 0.0;
  double s = 0.0;
};

struct ALevel {
  double r = 0.0;
  double a = 0.0;          // least-squares fit over the level's usable points
  double deviation = 0.0;  // max |a_point − a|
  double res1 = 0.0;       // max |res1| at the level (independent of a)
  int used = 0;
  int total = 0;
};

struct AFit {
  std::vector<ALevel> levels;
  double max_deviation = 0.0;
  double max_res1 = 0.0;

  /// A witness exists for this γ when a depends on r only and res1 vanishes.
  bool consistent(double tol) const { return max_deviation <= 10.0 * tol && max_res1 <= 10.0 * tol; }
};

/// Solves a(r)(sγ_s − γ) = 2s p_rs − 2p_r + p_ss per r-level. Samples with the
/// same r form one level, in first-appearance order. Points with |sγ_s − γ| < 1e-6
/// are skipped; more than 10% skipped at any level throws IllConditioned.
AFit solve_a_given_gamma(const ProjectiveProfile& p, const Profile& gamma, const std::vector<RSPoint>& samples);

/// m equally spaced s-values in (0, √r] at each r-level, clipped to the profile domains.
std::vector<RSPoint> a_fit_grid(const std::vector<double>& r_levels, int m, const Profile& p, const Profile& gamma);

}  // namespace spraylab
