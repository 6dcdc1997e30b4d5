#pragma once

#include "spraylab/engine.hpp"
#include "spraylab/sampling.hpp"

#include <string_view>
#include <vector>

namespace spraylab {

/// R^i_k at a fixed (x, y); row i is the upper index.
struct CurvatureTensor {
  PointPair at;
  Mat R;
};

/// R^i_k = 2G^i_{x^k} − G^i_{x^j y^k} y^j + 2G^j G^i_{y^j y^k} − G^i_{y^j} G^j_{y^k}, no symmetrization.
Mat riemann_from_jet(const SprayJet& jet, const Vec& y);

CurvatureTensor riemann_generic(const SprayField& spray, const PointPair& pair, const DerivativeEngine& engine);

/// Closed form for G^i = |y| p(r,s) y^i in terms of p, p_r, p_s, p_rs, p_ss.
Mat riemann_closed_from_jet(const Jet2RS& p, const PointPair& pair);
CurvatureTensor riemann_projective_closed(const ProjectiveProfile& profile, const PointPair& pair);

/// Scalar-curvature data R^i_k = R δ^i_k − τ_k y^i of a projectively flat spray.
struct ScalarData {
  double R = 0.0;
  Vec tau;
  double contraction_residual = 0.0;  // |Σ τ_k y^k − R|
};

ScalarData scalar_data_from_jet(const Jet2RS& p, const PointPair& pair);
ScalarData scalar_data(const ProjectiveProfile& profile, const PointPair& pair);

/// Trace R^m_m and its y-gradient, from the closed-form expressions (not differenced).
struct TraceData {
  double trace = 0.0;
  Vec gradient;
};

TraceData ricci_trace(const Jet2RS& p, const PointPair& pair);

/// (1/(n−1)) R^m_m δ^i_k − (1/(2(n−1))) (R^m_m)_{y^k} y^i: the isotropic form rebuilt from the trace.
Mat isotropic_form(const TraceData& trace, const Vec& y);

/// s p_rs − p_r + ½ p_ss
double isotropic_residual(const Jet2RS& p, double s);

/// R^i_k minus its isotropic form, both from the closed form.
Mat isotropic_defect_tensor(const ProjectiveProfile& profile, const PointPair& pair);
Mat isotropic_defect_from_jet(const Jet2RS& p, const PointPair& pair);

struct ZeroResiduals {
  double c8 = 0.0;          // p² − 2s p_r − p_s
  double c9 = 0.0;          // p p_s + 2s p_rs − 4p_r + p_ss
  double c10 = 0.0;         // (sp+1)p_s + 2s(s p_rs − p_r) + s p_ss − p²
  double dependency = 0.0;  // |c10 − (s·c9 − c8)|
};

ZeroResiduals zero_residuals(const Jet2RS& p, double s);

/// 1 + |p| + |p_r| + |p_s| + |p_rs| + |p_ss|
double jet_scale(const Jet2RS& p);

/// max_i |Σ_k R^i_k y^k| / (|y|²·(1 + ‖R‖_max))
double flagpole_residual(const Mat& r, const Vec& y);

enum class Verdict { Zero, IsotropicNonzero, ScalarOnly, Indeterminate };

std::string_view to_string(Verdict v);

struct ResidualStat {
  double max = 0.0;
  double mean = 0.0;
};

struct ResidualReport {
  ResidualStat residual_c5;   // normalized by jet_scale
  ResidualStat residual_c8;
  ResidualStat residual_c9;
  ResidualStat residual_c10;
  ResidualStat trace;         // |R^m_m| / |y|²
  double dependency_max = 0.0;
  int samples = 0;
  double abs_tol = 0.0;
  Verdict verdict = Verdict::Indeterminate;
};

/// Aggregates the residual systems over the samples. Thresholds:
///   zero              max(c8, c9) ≤ abs_tol
///   isotropic_nonzero c5 ≤ abs_tol and some |R^m_m|/|y|² > 10·abs_tol
///   scalar_only       otherwise
/// A deciding statistic in (abs_tol, 10·abs_tol] gives indeterminate instead.
ResidualReport classify(const ProjectiveProfile& profile, const std::vector<PointPair>& samples,
                        const ToleranceConfig& cfg = {});
ResidualReport classify(const ProjectiveProfile& profile, const SamplePlan& plan,
                        const ToleranceConfig& cfg = {});

}  // namespace spraylab
