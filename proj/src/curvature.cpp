#include "spraylab/curvature.hpp"

#include "spraylab/invariants.hpp"

#include <cmath>

namespace spraylab {

Mat riemann_from_jet(const SprayJet& jet, const Vec& y) {
  const int n = static_cast<int>(y.size());
  Mat r = 2.0 * jet.dx - jet.dy * jet.dy;
  for (int i = 0; i < n; ++i) {
    r.row(i) -= y.transpose() * jet.dxdy[i];
    r.row(i) += 2.0 * jet.g.transpose() * jet.dydy[i];
  }
  return r;
}

CurvatureTensor riemann_generic(const SprayField& spray, const PointPair& pair, const DerivativeEngine& engine) {
  if (!(pair.y.norm() > 0.0)) throw Error(ErrorCode::ZeroDirection, "direction y must be nonzero");
  const SprayJet jet = engine.spray_jet(spray, pair);
  for (Eigen::Index i = 0; i < jet.g.size(); ++i) {
    if (!std::isfinite(jet.g(i))) throw Error(ErrorCode::EngineFailure, "non-finite spray value");
  }
  return {pair, riemann_from_jet(jet, pair.y)};
}

ZeroResiduals zero_residuals(const Jet2RS& p, double s) {
  ZeroResiduals z;
  z.c8 = p.v * p.v - 2.0 * s * p.d_r - p.d_s;
  z.c9 = p.v * p.d_s + 2.0 * s * p.d_rs - 4.0 * p.d_r + p.d_ss;
  z.c10 = (s * p.v + 1.0) * p.d_s + 2.0 * s * (s * p.d_rs - p.d_r) + s * p.d_ss - p.v * p.v;
  z.dependency = std::abs(z.c10 - (s * z.c9 - z.c8));
  return z;
}

Mat riemann_closed_from_jet(const Jet2RS& p, const PointPair& pair) {
  const InvariantCoords rs = invariants(pair);
  const ZeroResiduals z = zero_residuals(p, rs.s);
  const double ny = pair.y.norm();
  const int n = pair.dim();
  const Vec tau = ny * z.c9 * pair.x - z.c10 * pair.y;
  return ny * ny * z.c8 * Mat::Identity(n, n) - pair.y * tau.transpose();
}

CurvatureTensor riemann_projective_closed(const ProjectiveProfile& profile, const PointPair& pair) {
  const InvariantCoords rs = invariants(pair);
  return {pair, riemann_closed_from_jet(profile.p.jet(rs.r, rs.s), pair)};
}

ScalarData scalar_data_from_jet(const Jet2RS& p, const PointPair& pair) {
  const InvariantCoords rs = invariants(pair);
  const ZeroResiduals z = zero_residuals(p, rs.s);
  const double ny = pair.y.norm();
  ScalarData d;
  d.R = ny * ny * z.c8;
  d.tau = ny * z.c9 * pair.x - z.c10 * pair.y;
  d.contraction_residual = std::abs(d.tau.dot(pair.y) - d.R);
  return d;
}

ScalarData scalar_data(const ProjectiveProfile& profile, const PointPair& pair) {
  const InvariantCoords rs = invariants(pair);
  return scalar_data_from_jet(profile.p.jet(rs.r, rs.s), pair);
}

TraceData ricci_trace(const Jet2RS& p, const PointPair& pair) {
  const InvariantCoords rs = invariants(pair);
  const double s = rs.s;
  const double ny = pair.y.norm();
  const double m = pair.dim() - 1.0;
  TraceData t;
  t.trace = ny * ny * m * (p.v * p.v - 2.0 * s * p.d_r - p.d_s);
  const double cx = 2.0 * p.v * p.d_s - 2.0 * s * p.d_rs - 2.0 * p.d_r - p.d_ss;
  const double cy =
      2.0 * (p.v * p.v - (s * p.v + 1.0) * p.d_s + s * (s * p.d_rs - p.d_r)) + s * p.d_ss;
  t.gradient = m * (ny * cx * pair.x + cy * pair.y);
  return t;
}

Mat isotropic_form(const TraceData& trace, const Vec& y) {
  const int n = static_cast<int>(y.size());
  const double m = n - 1.0;
  return trace.trace / m * Mat::Identity(n, n) - y * trace.gradient.transpose() / (2.0 * m);
}

double isotropic_residual(const Jet2RS& p, double s) { return s * p.d_rs - p.d_r + 0.5 * p.d_ss; }

Mat isotropic_defect_from_jet(const Jet2RS& p, const PointPair& pair) {
  return riemann_closed_from_jet(p, pair) - isotropic_form(ricci_trace(p, pair), pair.y);
}

Mat isotropic_defect_tensor(const ProjectiveProfile& profile, const PointPair& pair) {
  const InvariantCoords rs = invariants(pair);
  return isotropic_defect_from_jet(profile.p.jet(rs.r, rs.s), pair);
}

double jet_scale(const Jet2RS& p) {
  return 1.0 + std::abs(p.v) + std::abs(p.d_r) + std::abs(p.d_s) + std::abs(p.d_rs) + std::abs(p.d_ss);
}

double flagpole_residual(const Mat& r, const Vec& y) {
  return (r * y).cwiseAbs().maxCoeff() / (y.squaredNorm() * (1.0 + max_abs(r)));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Zero: return "zero";
    case Verdict::IsotropicNonzero: return "isotropic_nonzero";
    case Verdict::ScalarOnly: return "scalar_only";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

namespace {

struct Accumulator {
  double max = 0.0, sum = 0.0;
  int count = 0;
  void add(double v) {
    max = std::max(max, v);
    sum += v;
    ++count;
  }
  ResidualStat stat() const { return {max, count ? sum / count : 0.0}; }
};

}  // namespace

ResidualReport classify(const ProjectiveProfile& profile, const std::vector<PointPair>& samples,
                        const ToleranceConfig& cfg) {
  cfg.validate();
  if (samples.empty()) throw Error(ErrorCode::SchemaError, "classification needs at least one sample");
  Accumulator c5, c8, c9, c10, tr;
  double dependency = 0.0;
  for (const PointPair& pair : samples) {
    const InvariantCoords rs = invariants(pair);
    const Jet2RS jet = profile.p.jet(rs.r, rs.s);
    const double scale = jet_scale(jet);
    const ZeroResiduals z = zero_residuals(jet, rs.s);
    c5.add(std::abs(isotropic_residual(jet, rs.s)) / scale);
    c8.add(std::abs(z.c8) / scale);
    c9.add(std::abs(z.c9) / scale);
    c10.add(std::abs(z.c10) / scale);
    tr.add((pair.dim() - 1.0) * std::abs(z.c8));
    dependency = std::max(dependency, z.dependency / (scale * scale));
  }

  ResidualReport rep;
  rep.residual_c5 = c5.stat();
  rep.residual_c8 = c8.stat();
  rep.residual_c9 = c9.stat();
  rep.residual_c10 = c10.stat();
  rep.trace = tr.stat();
  rep.dependency_max = dependency;
  rep.samples = static_cast<int>(samples.size());
  rep.abs_tol = cfg.abs_tol;

  const double tol = cfg.abs_tol;
  const double zero_stat = std::max(rep.residual_c8.max, rep.residual_c9.max);
  const double iso_stat = rep.residual_c5.max;
  if (zero_stat <= tol) {
    rep.verdict = Verdict::Zero;
  } else if (zero_stat <= 10.0 * tol) {
    rep.verdict = Verdict::Indeterminate;
  } else if (iso_stat <= tol) {
    rep.verdict = rep.trace.max > 10.0 * tol ? Verdict::IsotropicNonzero : Verdict::Indeterminate;
  } else if (iso_stat <= 10.0 * tol) {
    rep.verdict = Verdict::Indeterminate;
  } else {
    rep.verdict = Verdict::ScalarOnly;
  }
  return rep;
}

ResidualReport classify(const ProjectiveProfile& profile, const SamplePlan& plan, const ToleranceConfig& cfg) {
  const auto pairs = sample_pairs(plan, [&](const PointPair& pair) {
    const InvariantCoords rs = invariants(pair);
    return profile.p.in_domain(rs.r, rs.s);
  });
  return classify(profile, pairs, cfg);
}

}  // namespace spraylab
