#include "spraylab/engine.hpp"

#include "spraylab/invariants.hpp"
#include "ridders.hpp"

#include <cmath>

namespace spraylab {

MetricJet DerivativeEngine::metric_jet(const FinslerMetric&, const PointPair&) const {
  throw Error(ErrorCode::EngineFailure,
              std::string("engine '") + std::string(name()) + "' cannot differentiate metrics");
}

double FinslerMetric::operator()(const Vec& x, const Vec& y) const {
  if (!in_domain(x)) throw Error(ErrorCode::DomainExit, "metric '" + name + "' evaluated outside its domain");
  std::vector<double> xs(x.data(), x.data() + x.size());
  std::vector<double> ys(y.data(), y.data() + y.size());
  return f(xs, ys);
}

namespace {

// Finite differences of a vector function of z = (x, y) ∈ R^{2n}, each
// quotient refined by Ridders' extrapolation. The first step along axis i is
// base·max(1, |z_i|), capped at kReach times the distance to the domain edge
// along that axis: near a boundary the function's Taylor radius is that
// distance, and larger steps start the tableau outside its asymptotic regime.
class Differencer {
 public:
  using Fn = std::function<Vec(const Vec&)>;
  using Inside = std::function<bool(const Vec&)>;

  Differencer(Fn fn, Inside inside, Vec z, double base_step, int levels)
      : fn_(std::move(fn)), inside_(std::move(inside)), z_(std::move(z)), levels_(levels) {
    f0_ = fn_(z_);
    steps_.resize(z_.size());
    for (Eigen::Index i = 0; i < z_.size(); ++i) {
      const double h = base_step * std::max(1.0, std::abs(z_(i)));
      steps_(i) = std::min(h, kReach * reach(static_cast<int>(i), h / kReach));
    }
  }

  const Vec& value() const { return f0_; }

  struct Axis {
    Vec first, second;
  };

  Axis axis(int i) const {
    const Eigen::Index m = f0_.size();
    const double scale = step(i);
    const Vec both = detail::ridders(
        [&](double t) -> Vec {
          const double h = t * scale;
          const Vec fp = at(i, h), fm = at(i, -h);
          Vec out(2 * m);
          out << (fp - fm) / (2.0 * h), (fp - 2.0 * f0_ + fm) / (h * h);
          return out;
        },
        1.0, levels_);
    return {both.head(m), both.tail(m)};
  }

  Vec mixed(int i, int j) const {
    const double si = step(i), sj = step(j);
    return detail::ridders(
        [&](double t) -> Vec {
          const double a = t * si, b = t * sj;
          return (at2(i, a, j, b) - at2(i, a, j, -b) - at2(i, -a, j, b) + at2(i, -a, j, -b)) / (4.0 * a * b);
        },
        1.0, levels_);
  }

 private:
  static constexpr double kReach = 0.1;

  double step(int i) const { return steps_(i); }

  // Largest t ≤ limit with z ± t·e_i inside, to within 0.1% (bisection).
  double reach(int i, double limit) const {
    auto ok = [&](double t) {
      Vec z = z_;
      z(i) += t;
      if (!inside_(z)) return false;
      z(i) -= 2.0 * t;
      return inside_(z);
    };
    if (ok(limit)) return limit;
    double lo = 0.0, hi = limit;
    while (hi - lo > 1e-3 * hi) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? lo : hi) = mid;
    }
    return lo;
  }

  Vec at(int i, double h) const {
    Vec z = z_;
    z(i) += h;
    return fn_(z);
  }
  Vec at2(int i, double hi, int j, double hj) const {
    Vec z = z_;
    z(i) += hi;
    z(j) += hj;
    return fn_(z);
  }

  Fn fn_;
  Inside inside_;
  Vec z_;
  Vec steps_;
  int levels_;
  Vec f0_;
};

Vec stack(const PointPair& at) {
  Vec z(2 * at.dim());
  z << at.x, at.y;
  return z;
}

SprayJet empty_jet(int n) {
  SprayJet jet;
  jet.g = Vec::Zero(n);
  jet.dx = Mat::Zero(n, n);
  jet.dy = Mat::Zero(n, n);
  jet.dxdy.assign(n, Mat::Zero(n, n));
  jet.dydy.assign(n, Mat::Zero(n, n));
  return jet;
}

}  // namespace

SprayJet FiniteDifferenceEngine::spray_jet(const SprayField& spray, const PointPair& at) const {
  const int n = at.dim();
  Differencer d([&](const Vec& z) { return spray(z.head(n), z.tail(n)); },
                [&](const Vec& z) { return spray.in_domain(PointPair{z.head(n), z.tail(n)}); }, stack(at),
                cfg_.fd_step, cfg_.fd_levels);
  SprayJet jet = empty_jet(n);
  jet.g = d.value();
  for (int k = 0; k < n; ++k) {
    jet.dx.col(k) = d.axis(k).first;
    const Differencer::Axis ay = d.axis(n + k);
    jet.dy.col(k) = ay.first;
    for (int i = 0; i < n; ++i) jet.dydy[i](k, k) = ay.second(i);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Vec m = d.mixed(j, n + k);
      for (int i = 0; i < n; ++i) jet.dxdy[i](j, k) = m(i);
    }
    for (int k = j + 1; k < n; ++k) {
      const Vec m = d.mixed(n + j, n + k);
      for (int i = 0; i < n; ++i) jet.dydy[i](j, k) = jet.dydy[i](k, j) = m(i);
    }
  }
  return jet;
}

MetricJet FiniteDifferenceEngine::metric_jet(const FinslerMetric& metric, const PointPair& at) const {
  const int n = at.dim();
  auto l = [&](const Vec& z) {
    const double f = metric(z.head(n), z.tail(n));
    return Vec::Constant(1, f * f);
  };
  Differencer d(l, [&](const Vec& z) { return metric.in_domain(z.head(n)); }, stack(at), cfg_.fd_step, cfg_.fd_levels);
  MetricJet jet;
  jet.value = d.value()(0);
  jet.dx = Vec::Zero(n);
  jet.dydy = Mat::Zero(n, n);
  jet.dydx = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jet.dx(k) = d.axis(k).first(0);
    jet.dydy(k, k) = d.axis(n + k).second(0);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) jet.dydx(j, k) = d.mixed(n + j, k)(0);
    for (int k = j + 1; k < n; ++k) jet.dydy(j, k) = jet.dydy(k, j) = d.mixed(n + j, n + k)(0);
  }
  return jet;
}

namespace {

DualVec<Dual1> to_dual(const Vec& v) {
  DualVec<Dual1> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = Dual1(v(i));
  return out;
}

}  // namespace

SprayJet DualNumberEngine::spray_jet(const SprayField& spray, const PointPair& at) const {
  if (!spray.eval_dual) {
    throw Error(ErrorCode::EngineFailure, "spray '" + spray.name + "' has no dual-number evaluator");
  }
  if (!spray.in_domain(at)) throw Error(ErrorCode::DomainExit, "spray '" + spray.name + "' outside its domain");
  const int n = at.dim();
  SprayJet jet = empty_jet(n);
  const DualVec<Dual1> x0 = to_dual(at.x), y0 = to_dual(at.y);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      DualVec<Dual1> x = x0, y = y0;
      x[j].b = 1.0;
      y[k].c = 1.0;
      const DualVec<Dual1> g = spray.eval_dual(x, y);
      for (int i = 0; i < n; ++i) {
        jet.g(i) = g[i].a;
        jet.dx(i, j) = g[i].b;
        jet.dy(i, k) = g[i].c;
        jet.dxdy[i](j, k) = g[i].d;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      DualVec<Dual1> y = y0;
      y[j].b = 1.0;
      y[k].c = 1.0;
      const DualVec<Dual1> g = spray.eval_dual(x0, y);
      for (int i = 0; i < n; ++i) jet.dydy[i](j, k) = jet.dydy[i](k, j) = g[i].d;
    }
  }
  return jet;
}

MetricJet DualNumberEngine::metric_jet(const FinslerMetric& metric, const PointPair& at) const {
  if (!metric.in_domain(at.x)) throw Error(ErrorCode::DomainExit, "metric '" + metric.name + "' outside its domain");
  const int n = at.dim();
  const DualVec<Dual1> x0 = to_dual(at.x), y0 = to_dual(at.y);
  auto l = [&](const DualVec<Dual1>& x, const DualVec<Dual1>& y) {
    const Dual1 f = metric.f_dual(x, y);
    return f * f;
  };
  MetricJet jet;
  jet.dx = Vec::Zero(n);
  jet.dydy = Mat::Zero(n, n);
  jet.dydx = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      DualVec<Dual1> x = x0, y = y0;
      y[j].b = 1.0;
      x[k].c = 1.0;
      const Dual1 v = l(x, y);
      jet.value = v.a;
      jet.dx(k) = v.c;
      jet.dydx(j, k) = v.d;
    }
    for (int k = j; k < n; ++k) {
      DualVec<Dual1> y = y0;
      y[j].b = 1.0;
      y[k].c = 1.0;
      jet.dydy(j, k) = jet.dydy(k, j) = l(x0, y).d;
    }
  }
  return jet;
}

SprayJet projective_spray_jet(const Jet2RS& p, const PointPair& at) {
  const int n = at.dim();
  const InvariantPartials d = invariant_partials(at);
  const Vec& y = at.y;
  const double ny = d.norm_y;
  const Mat id = Mat::Identity(n, n);

  SprayJet jet = empty_jet(n);
  jet.g = ny * p.v * y;

  // ∂G^i/∂x^k = y^i|y|(r_k p_r + s_k p_s)
  const Vec grad_x = d.dr_dx * p.d_r + d.ds_dx * p.d_s;
  jet.dx = ny * y * grad_x.transpose();

  // ∂G^i/∂y^k = (y_k y^i/|y| + |y|δ^i_k) p + y^i|y| s_{y^k} p_s
  const Mat a = y * y.transpose() / ny + ny * id;  // (i,k)
  jet.dy = a * p.v + ny * p.d_s * y * d.ds_dy.transpose();

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        jet.dxdy[i](j, k) =
            a(i, k) * grad_x(j) +
            y(i) * ny *
                (d.dr_dx(j) * d.ds_dy(k) * p.d_rs + d.ds_dx(j) * d.ds_dy(k) * p.d_ss + d.d2s_dxdy(j, k) * p.d_s);

        const double dij = id(i, j), dik = id(i, k);
        const double hom = y(k) / ny * dij + y(j) / ny * dik + y(i) * (id(k, j) * ny * ny - y(k) * y(j)) / (ny * ny * ny);
        const double bracket = y(i) / ny * (y(j) * d.ds_dy(k) + y(k) * d.ds_dy(j)) +
                               ny * (dik * d.ds_dy(j) + dij * d.ds_dy(k)) + y(i) * ny * d.d2s_dydy(k, j);
        jet.dydy[i](j, k) = hom * p.v + y(i) * ny * d.ds_dy(k) * d.ds_dy(j) * p.d_ss + bracket * p.d_s;
      }
    }
  }
  return jet;
}

SprayJet ProjectiveJetEngine::spray_jet(const SprayField& spray, const PointPair& at) const {
  if (!spray.projective) {
    throw Error(ErrorCode::EngineFailure, "spray '" + spray.name + "' has no projective profile");
  }
  if (!spray.in_domain(at)) throw Error(ErrorCode::DomainExit, "spray '" + spray.name + "' outside its domain");
  const InvariantCoords rs = invariants(at);
  return projective_spray_jet(spray.projective->p.jet(rs.r, rs.s), at);
}

}  // namespace spraylab
