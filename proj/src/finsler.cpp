#include "spraylab/finsler.hpp"

#include "spraylab/invariants.hpp"

#include <cmath>

namespace spraylab {

namespace {

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T acc(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const Vec& x) { return x.squaredNorm(); }

}  // namespace

FinslerMetric minkowski_metric(int dim) {
  FinslerMetric m = make_metric("minkowski", dim, [](const auto& x, const auto& y) {
    (void)x;
    return sqrt(dot(y, y));
  });
  m.constant_flag_curvature = 0.0;
  return m;
}

FinslerMetric spaceform_metric(int dim, double mu) {
  FinslerMetric m = make_metric(
      "spaceform_alpha", dim,
      [mu](const auto& x, const auto& y) {
        const auto xx = dot(x, x), yy = dot(y, y), xy = dot(x, y);
        return sqrt(yy + mu * (xx * yy - xy * xy)) / (1.0 + mu * xx);
      },
      [mu](const Vec& x) { return 1.0 + mu * norm2(x) > 0.0; });
  m.constant_flag_curvature = mu;
  if (mu < 0.0) m.sample_radius = 0.9 / std::sqrt(-mu);
  return m;
}

FinslerMetric funk_metric(int dim) {
  FinslerMetric m = make_metric(
      "funk", dim,
      [](const auto& x, const auto& y) {
        const auto xx = dot(x, x), yy = dot(y, y), xy = dot(x, y);
        return (sqrt(xy * xy + (1.0 - xx) * yy) + xy) / (1.0 - xx);
      },
      [](const Vec& x) { return norm2(x) < 1.0; });
  m.constant_flag_curvature = -0.25;
  m.sample_radius = 0.9;
  return m;
}

FinslerMetric berwald_metric(int dim, double c, bool plus) {
  if (!(c > 0.0)) throw Error(ErrorCode::SchemaError, "berwald metric needs c > 0");
  const double sg = plus ? 1.0 : -1.0;
  FinslerMetric m = make_metric(
      "berwald", dim,
      [c, sg](const auto& x, const auto& y) {
        const auto xx = dot(x, x), yy = dot(y, y), xy = dot(x, y);
        const auto w = c - xx;
        const auto q = sqrt(w * yy + xy * xy);
        const auto num = q + sg * xy;
        return num * num / (w * w * q);
      },
      [c](const Vec& x) { return norm2(x) < c; });
  m.constant_flag_curvature = 0.0;
  m.sample_radius = 0.9 * std::sqrt(c);
  return m;
}

namespace {

FundamentalTensor tensor_from_jet(const MetricJet& jet) {
  FundamentalTensor t;
  const Mat g = 0.5 * jet.dydy;
  t.g = 0.5 * (g + g.transpose());
  Eigen::FullPivLU<Mat> lu(t.g);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularTensor, "fundamental tensor is singular");
  t.g_inv = lu.inverse();
  Eigen::LLT<Mat> llt(t.g);
  t.positive_definite = llt.info() == Eigen::Success;
  return t;
}

Vec spray_from_jet(const MetricJet& jet, const Vec& y) {
  const Mat g = 0.25 * (jet.dydy + jet.dydy.transpose());
  Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularTensor, "fundamental tensor is singular");
  const Vec rhs = jet.dydx * y - jet.dx;
  return 0.25 * lu.solve(rhs);
}

// Same formula evaluated in hyper-dual arithmetic: L's partials come from the
// second-level evaluator, the linear solve is Gaussian elimination in T.
template <class T>
std::vector<T> induced_spray_t(const MetricFn<HyperDual<T>>& f, const std::vector<T>& x0, const std::vector<T>& y0) {
  using H = HyperDual<T>;
  const std::size_t n = x0.size();
  std::vector<H> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = H(x0[i]);
    y[i] = H(y0[i]);
  }
  auto l = [&](const std::vector<H>& xs, const std::vector<H>& ys) {
    const H v = f(xs, ys);
    return v * v;
  };
  std::vector<std::vector<T>> a(n, std::vector<T>(n + 1, T(0.0)));
  for (std::size_t j = 0; j < n; ++j) {
    T rhs(0.0);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<H> xs = x, ys = y;
      ys[j].b = T(1.0);
      xs[k].c = T(1.0);
      const H v = l(xs, ys);
      rhs += v.d * y0[k];
      if (k == j) rhs -= v.c;
    }
    a[j][n] = rhs;
    for (std::size_t k = j; k < n; ++k) {
      std::vector<H> ys = y;
      ys[j].b = T(1.0);
      ys[k].c = T(1.0);
      const T gjk = 0.5 * l(x, ys).d;
      a[j][k] = gjk;
      a[k][j] = gjk;
    }
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(value_of(a[r][col])) > std::abs(value_of(a[piv][col]))) piv = r;
    }
    if (value_of(a[piv][col]) == 0.0) throw Error(ErrorCode::SingularTensor, "fundamental tensor is singular");
    std::swap(a[piv], a[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<T> g(n, T(0.0));
  for (std::size_t i = n; i-- > 0;) {
    T acc = a[i][n];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * g[c];
    g[i] = acc / a[i][i];
  }
  for (auto& gi : g) gi = 0.25 * gi;
  return g;
}

}  // namespace

FundamentalTensor fundamental_tensor(const FinslerMetric& metric, const PointPair& pair,
                                     const DerivativeEngine& engine) {
  return tensor_from_jet(engine.metric_jet(metric, pair));
}

Vec induced_spray(const FinslerMetric& metric, const PointPair& pair, const DerivativeEngine& engine) {
  return spray_from_jet(engine.metric_jet(metric, pair), pair.y);
}

SprayField induced_spray_field(const FinslerMetric& metric, std::shared_ptr<const DerivativeEngine> engine) {
  SprayField g;
  g.name = metric.name + "_induced";
  g.dim = metric.dim;
  g.domain = [metric](const PointPair& pair) { return metric.in_domain(pair.x); };
  g.eval = [metric, engine](const Vec& x, const Vec& y) { return induced_spray(metric, {x, y}, *engine); };
  if (metric.f_dual2) {
    g.eval_dual = [f = metric.f_dual2](const DualVec<Dual1>& x, const DualVec<Dual1>& y) {
      return induced_spray_t<Dual1>(f, x, y);
    };
  }
  return g;
}

double flag_curvature(const FinslerMetric& metric, const PointPair& pair, const Vec& u,
                      const DerivativeEngine& engine) {
  auto owned = std::shared_ptr<const DerivativeEngine>(&engine, [](const DerivativeEngine*) {});
  const SprayField spray = induced_spray_field(metric, owned);
  const Mat r = riemann_generic(spray, pair, engine).R;
  const Mat g = fundamental_tensor(metric, pair, engine).g;
  const Vec& y = pair.y;
  const double gyy = y.dot(g * y), guu = u.dot(g * u), gyu = y.dot(g * u);
  const double den = gyy * guu - gyu * gyu;
  if (!(den > 1e-12 * std::abs(gyy * guu))) {
    throw Error(ErrorCode::DegenerateFlag, "flag direction is parallel to the flagpole");
  }
  return u.dot(g * (r * u)) / den;
}

MetrizabilityReport metrizability_scalar_check(const SprayField& spray, const FinslerMetric& metric,
                                               const std::vector<PointPair>& samples,
                                               const DerivativeEngine& engine) {
  if (samples.empty()) throw Error(ErrorCode::SchemaError, "metrizability check needs samples");
  MetrizabilityReport rep;
  const int n = samples.front().dim();
  rep.constancy_meaningful = n >= 3;
  double sum = 0.0;
  for (const PointPair& pair : samples) {
    const Mat r = riemann_generic(spray, pair, engine).R;
    const double f = metric(pair.x, pair.y);
    const double scalar = r.trace() / (n - 1);
    rep.values.push_back(scalar / (f * f));
    sum += rep.values.back();
  }
  rep.lambda = sum / static_cast<double>(rep.values.size());
  for (double v : rep.values) rep.constancy_residual = std::max(rep.constancy_residual, std::abs(v - rep.lambda));
  return rep;
}

double projective_lambda(const ProjectiveProfile& profile, const FinslerMetric& metric, const PointPair& pair) {
  const InvariantCoords rs = invariants(pair);
  const Jet2RS p = profile.p.jet(rs.r, rs.s);
  const double yy = pair.y.squaredNorm();
  const double big_p2 = yy * p.v * p.v;
  const double px_y = yy * (2.0 * rs.s * p.d_r + p.d_s);
  const double f = metric(pair.x, pair.y);
  return (big_p2 - px_y) / (f * f);
}

}  // namespace spraylab
