#pragma once

#include "spraylab/profile.hpp"
#include "spraylab/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace spraylab {

/// G^i = |y|·α(r,s)·y^i + |y|²·β(r,s)·x^i.
struct SphericalProfile {
  Profile alpha;
  Profile beta;
};

/// Projectively flat case: G^i = |y|·p(r,s)·y^i.
struct ProjectiveProfile {
  Profile p;
};

/// Geodesic coefficients (x, y) ↦ G(x, y), positively 2-homogeneous in y.
struct SprayField {
  using Eval = std::function<Vec(const Vec& x, const Vec& y)>;
  using DualEval = std::function<DualVec<Dual1>(const DualVec<Dual1>& x, const DualVec<Dual1>& y)>;

  std::string name;
  int dim = 0;
  Eval eval;
  DualEval eval_dual;                                  // optional; enables the dual-number engine
  std::function<bool(const PointPair&)> domain;        // optional; empty means everywhere
  std::shared_ptr<const ProjectiveProfile> projective;  // set when G = |y| p y

  bool in_domain(const PointPair& pair) const { return !domain || domain(pair); }

  /// Evaluates G with a domain check (throws DomainExit).
  Vec operator()(const Vec& x, const Vec& y) const;
};

Vec eval_spherical(const SphericalProfile& profile, const PointPair& pair);
Vec eval_projective(const ProjectiveProfile& profile, const PointPair& pair);

SprayField make_spherical_spray(std::string name, int dim, SphericalProfile profile);
SprayField make_projective_spray(std::string name, int dim, ProjectiveProfile profile);

/// Spray from an expression written generically in its scalar type:
/// fn(const std::vector<T>& x, const std::vector<T>& y) -> std::vector<T>.
template <class Fn>
SprayField make_spray(std::string name, int dim, Fn fn,
                      std::function<bool(const PointPair&)> domain = {}) {
  SprayField g;
  g.name = std::move(name);
  g.dim = dim;
  g.domain = std::move(domain);
  g.eval = [fn](const Vec& x, const Vec& y) {
    std::vector<double> xs(x.data(), x.data() + x.size());
    std::vector<double> ys(y.data(), y.data() + y.size());
    std::vector<double> out = fn(xs, ys);
    return Vec(Eigen::Map<const Vec>(out.data(), static_cast<Eigen::Index>(out.size())));
  };
  g.eval_dual = [fn](const DualVec<Dual1>& x, const DualVec<Dual1>& y) { return fn(x, y); };
  return g;
}

/// ‖G(x, λy) − λ²G(x, y)‖ / (1 + λ²‖G(x, y)‖).
double check_homogeneity(const SprayField& spray, const PointPair& pair, double lambda);

/// ‖G(Ux, Uy) − U·G(x, y)‖ / (1 + ‖G(x, y)‖).
double check_equivariance(const SprayField& spray, const PointPair& pair, const Mat& u);

}  // namespace spraylab
