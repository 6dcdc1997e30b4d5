#include "spraylab/spray.hpp"

#include "spraylab/invariants.hpp"

#include <sstream>

namespace spraylab {

Vec SprayField::operator()(const Vec& x, const Vec& y) const {
  if (x.size() != dim || y.size() != dim) {
    throw Error(ErrorCode::SchemaError, "spray '" + name + "' called with wrong dimension");
  }
  if (!in_domain(PointPair{x, y})) {
    std::ostringstream os;
    os << "spray '" << name << "' evaluated outside its domain (|x|² = " << x.squaredNorm() << ")";
    throw Error(ErrorCode::DomainExit, os.str());
  }
  return eval(x, y);
}

Vec eval_spherical(const SphericalProfile& profile, const PointPair& pair) {
  const InvariantCoords rs = invariants(pair);
  const double ny = pair.y.norm();
  const double a = profile.alpha.value(rs.r, rs.s);
  const double b = profile.beta.value(rs.r, rs.s);
  return ny * a * pair.y + ny * ny * b * pair.x;
}

Vec eval_projective(const ProjectiveProfile& profile, const PointPair& pair) {
  const InvariantCoords rs = invariants(pair);
  return pair.y.norm() * profile.p.value(rs.r, rs.s) * pair.y;
}

namespace {

struct DualInvariants {
  Dual1 r, s, ny;
};

DualInvariants dual_invariants(const DualVec<Dual1>& x, const DualVec<Dual1>& y) {
  Dual1 r(0.0), xy(0.0), yy(0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    r += x[i] * x[i];
    xy += x[i] * y[i];
    yy += y[i] * y[i];
  }
  if (!(yy.a > 0.0)) throw Error(ErrorCode::ZeroDirection, "direction y must be nonzero");
  Dual1 ny = sqrt(yy);
  return {r, xy / ny, ny};
}

std::function<bool(const PointPair&)> rs_domain(const Profile& a, const Profile& b) {
  return [a, b](const PointPair& pair) {
    if (!(pair.y.norm() > 0.0)) return false;
    const InvariantCoords rs = invariants(pair);
    return a.in_domain(rs.r, rs.s) && b.in_domain(rs.r, rs.s);
  };
}

}  // namespace

SprayField make_spherical_spray(std::string name, int dim, SphericalProfile profile) {
  SprayField g;
  g.name = std::move(name);
  g.dim = dim;
  g.domain = rs_domain(profile.alpha, profile.beta);
  g.eval = [profile](const Vec& x, const Vec& y) { return eval_spherical(profile, {x, y}); };
  g.eval_dual = [profile](const DualVec<Dual1>& x, const DualVec<Dual1>& y) {
    const DualInvariants inv = dual_invariants(x, y);
    const Dual1 a = profile.alpha.dual(inv.r, inv.s) * inv.ny;
    const Dual1 b = profile.beta.dual(inv.r, inv.s) * inv.ny * inv.ny;
    DualVec<Dual1> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * y[i] + b * x[i];
    return out;
  };
  return g;
}

SprayField make_projective_spray(std::string name, int dim, ProjectiveProfile profile) {
  SprayField g;
  g.name = std::move(name);
  g.dim = dim;
  g.domain = rs_domain(profile.p, profile.p);
  g.eval = [profile](const Vec& x, const Vec& y) { return eval_projective(profile, {x, y}); };
  g.eval_dual = [profile](const DualVec<Dual1>& x, const DualVec<Dual1>& y) {
    const DualInvariants inv = dual_invariants(x, y);
    const Dual1 factor = profile.p.dual(inv.r, inv.s) * inv.ny;
    DualVec<Dual1> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = factor * y[i];
    return out;
  };
  g.projective = std::make_shared<const ProjectiveProfile>(std::move(profile));
  return g;
}

double check_homogeneity(const SprayField& spray, const PointPair& pair, double lambda) {
  const Vec g = spray(pair.x, pair.y);
  const Vec gl = spray(pair.x, lambda * pair.y);
  const double l2 = lambda * lambda;
  return (gl - l2 * g).norm() / (1.0 + l2 * g.norm());
}

double check_equivariance(const SprayField& spray, const PointPair& pair, const Mat& u) {
  const Vec g = spray(pair.x, pair.y);
  const Vec gu = spray(u * pair.x, u * pair.y);
  return (gu - u * g).norm() / (1.0 + g.norm());
}

}  // namespace spraylab
