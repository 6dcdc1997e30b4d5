#pragma once

#include "spraylab/metric.hpp"
#include "spraylab/spray.hpp"

#include <string_view>
#include <vector>

namespace spraylab {

/// First and second partials of a spray's coefficients at one point.
struct SprayJet {
  Vec g;                  // G^i
  Mat dx;                 // (i,k): ∂G^i/∂x^k
  Mat dy;                 // (i,k): ∂G^i/∂y^k
  std::vector<Mat> dxdy;  // [i](j,k): ∂²G^i/∂x^j∂y^k
  std::vector<Mat> dydy;  // [i](j,k): ∂²G^i/∂y^j∂y^k
};

/// Partials of L = F² used by the fundamental tensor and the induced spray.
struct MetricJet {
  double value = 0.0;  // F²
  Vec dx;              // ∂L/∂x^k
  Mat dydy;            // ∂²L/∂y^j∂y^k
  Mat dydx;            // (j,k): ∂²L/∂y^j∂x^k
};

class DerivativeEngine {
 public:
  virtual ~DerivativeEngine() = default;
  virtual std::string_view name() const = 0;
  virtual SprayJet spray_jet(const SprayField& spray, const PointPair& at) const = 0;
  /// Throws EngineFailure unless overridden.
  virtual MetricJet metric_jet(const FinslerMetric& metric, const PointPair& at) const;
};

/// Central differences refined by Ridders' extrapolation, starting from the step
/// cfg.fd_step·max(1, |coordinate|).
class FiniteDifferenceEngine final : public DerivativeEngine {
 public:
  explicit FiniteDifferenceEngine(ToleranceConfig cfg = {}) : cfg_(cfg) {}
  std::string_view name() const override { return "finite_difference"; }
  SprayJet spray_jet(const SprayField& spray, const PointPair& at) const override;
  MetricJet metric_jet(const FinslerMetric& metric, const PointPair& at) const override;

 private:
  ToleranceConfig cfg_;
};

/// Exact derivatives through hyper-dual evaluation. Needs SprayField::eval_dual.
class DualNumberEngine final : public DerivativeEngine {
 public:
  std::string_view name() const override { return "dual"; }
  SprayJet spray_jet(const SprayField& spray, const PointPair& at) const override;
  MetricJet metric_jet(const FinslerMetric& metric, const PointPair& at) const override;
};

/// Chain rule for G^i = |y| p(r,s) y^i through the partials of r and s, fed by
/// the profile's Jet2RS. Only sprays with a projective profile are accepted.
class ProjectiveJetEngine final : public DerivativeEngine {
 public:
  std::string_view name() const override { return "analytic"; }
  SprayJet spray_jet(const SprayField& spray, const PointPair& at) const override;
};

/// Jet of G^i = |y| p y^i from a jet of p at the pair's (r, s).
SprayJet projective_spray_jet(const Jet2RS& p, const PointPair& at);

}  // namespace spraylab
