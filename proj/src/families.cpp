#include "spraylab/families.hpp"

#include "spraylab/quadrature.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <cmath>
#include <memory>

namespace spraylab {

namespace {

// Central differences with one Richardson level; steps balance the O(h⁴)
// truncation against roundoff for first and second derivatives.
double derivative(const ScalarFn& f, double t) {
  const double h = std::pow(std::numeric_limits<double>::epsilon(), 0.2) * std::max(1.0, std::abs(t));
  const double coarse = (f(t + h) - f(t - h)) / (2.0 * h);
  const double fine = (f(t + 0.5 * h) - f(t - 0.5 * h)) / h;
  return (4.0 * fine - coarse) / 3.0;
}

double second_derivative(const ScalarFn& f, double t) {
  const double h = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 6.0) * std::max(1.0, std::abs(t));
  const double f0 = f(t);
  const double coarse = (f(t + h) - 2.0 * f0 + f(t - h)) / (h * h);
  const double fine = (f(t + 0.5 * h) - 2.0 * f0 + f(t - 0.5 * h)) / (0.25 * h * h);
  return (4.0 * fine - coarse) / 3.0;
}

// (f(r − σ²) − f(r))/σ². For small σ² the quotient cancels badly, so it is
// taken as −∫₀¹ f′(r − tσ²) dt with 5-point Gauss-Legendre instead.
double divided_difference(const ScalarFn& f, const ScalarFn& df, double r, double sigma) {
  const double q = sigma * sigma;
  if (q > 1e-2) return (f(r - q) - f(r)) / q;
  static constexpr double t[5] = {0.046910077030668, 0.230765344947158, 0.5, 0.769234655052842, 0.953089922969332};
  static constexpr double w[5] = {0.118463442528095, 0.239314335249683, 0.284444444444444, 0.239314335249683,
                                  0.118463442528095};
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) acc += w[i] * df(r - t[i] * q);
  return -acc;
}

// ∫_{s0}^{s} f(r − σ²)/σ² dσ for s0, s of one sign, split as the integral of the
// bounded divided difference plus f(r)·(1/s0 − 1/s). The 1/s piece is kept apart
// so callers can cancel it analytically.
struct SplitIntegral {
  double smooth;    // ∫ (f(r − σ²) − f(r))/σ² dσ + f(r)/s0
  double singular;  // f(r)
  double total(double s) const { return smooth - singular / s; }
};

SplitIntegral integral_over_sigma2(const ScalarFn& f, const ScalarFn& df, double r, double s0, double s, double tol) {
  const double fr = f(r);
  const double smooth = quad([&](double sigma) { return divided_difference(f, df, r, sigma); }, s0, s, tol);
  return {smooth + fr / s0, fr};
}

ScalarFn differenced(const ScalarFn& f) {
  return [f](double t) { return derivative(f, t); };
}

ScalarFn twice_differenced(const ScalarFn& f) {
  return [f](double t) { return second_derivative(f, t); };
}

// Differenced derivatives carry ~1e-11 noise, which an integral cannot resolve below ~1e-9.
constexpr double kDifferencedQuadTol = 1e-9;

enum class JetDepth { Value, Partials, Full };

Jet2RS isotropic_eval(const IsotropicFamilySpec& spec, double r, double s, JetDepth depth) {
  if (!spec.u || !spec.v) throw Error(ErrorCode::SchemaError, "isotropic family needs u and v");
  if (s == 0.0) throw Error(ErrorCode::SignCrossing, "isotropic family is undefined at s = 0");
  const double sign = s > 0.0 ? 1.0 : -1.0;
  double m0 = 0.0;
  if (spec.s0) {
    m0 = spec.s0(r);
  } else if (r > 0.0) {
    m0 = 0.5 * std::sqrt(r);
  }
  if (!(m0 > 0.0)) throw Error(ErrorCode::SignCrossing, "antiderivative basepoint must be nonzero");
  const double s0 = sign * m0;

  const ScalarFn du = spec.du ? spec.du : differenced(spec.u);
  Jet2RS j;
  const double u_tol = spec.du ? spec.quad_tol : std::max(spec.quad_tol, kDifferencedQuadTol);
  const SplitIntegral big_f = integral_over_sigma2(spec.u, du, r, s0, s, u_tol);
  const double vr = spec.v(r);
  // s·F = s·smooth − u(r) stays finite as s → 0.
  j.v = s * (big_f.smooth + vr) - big_f.singular;
  if (depth == JetDepth::Value) return j;

  const double dv = spec.dv ? spec.dv(r) : derivative(spec.v, r);
  double dm0 = 0.0;
  if (spec.ds0) {
    dm0 = spec.ds0(r);
  } else if (spec.s0) {
    dm0 = derivative(spec.s0, r);
  } else {
    dm0 = 0.25 / std::sqrt(r);
  }
  const ScalarFn ddu = spec.d2u ? spec.d2u : spec.du ? differenced(spec.du) : twice_differenced(spec.u);
  const double du_tol = spec.du && spec.d2u ? spec.quad_tol : std::max(spec.quad_tol, kDifferencedQuadTol);
  SplitIntegral big_fr = integral_over_sigma2(du, ddu, r, s0, s, du_tol);
  // Moving lower limit: d/dr ∫_{s0(r)}^{s} contributes −u(r − s0²)/s0² · s0′(r).
  big_fr.smooth -= spec.u(r - s0 * s0) / (s0 * s0) * sign * dm0;

  // F_s = u(r − s²)/s², so p_s = F + v + u(r − s²)/s, where the two 1/s terms
  // combine into s times the divided difference at σ = s.
  j.d_s = big_f.smooth + vr + s * divided_difference(spec.u, du, r, s);
  j.d_ss = -2.0 * du(r - s * s);
  j.d_r = s * (big_fr.smooth + dv) - big_fr.singular;
  j.d_rs = big_fr.smooth + dv + s * divided_difference(du, ddu, r, s);
  if (depth == JetDepth::Full) {
    j.d_rr = derivative([&](double rr) { return isotropic_eval(spec, rr, s, JetDepth::Partials).d_r; }, r);
  }
  return j;
}

}  // namespace

Jet2RS isotropic_p(const IsotropicFamilySpec& spec, double r, double s) {
  return isotropic_eval(spec, r, s, JetDepth::Full);
}

ProjectiveProfile isotropic_profile(const IsotropicFamilySpec& spec) {
  // u is sampled on t = r − σ² for σ between s0 and s; t is monotone along the path,
  // so checking both endpoints covers it.
  RSDomain domain = [spec](double r, double s) {
    if (s == 0.0) return false;
    double m0 = 0.0;
    if (spec.s0) {
      m0 = spec.s0(r);
    } else if (r > 0.0) {
      m0 = 0.5 * std::sqrt(r);
    }
    if (!(m0 > 0.0)) return false;
    return !spec.u_domain || (spec.u_domain(r - s * s) && spec.u_domain(r - m0 * m0));
  };
  return {Profile::from_jet(
      "isotropic_uv", [spec](double r, double s) { return isotropic_p(spec, r, s); }, domain,
      [spec](double r, double s) { return isotropic_eval(spec, r, s, JetDepth::Value).v; })};
}

ProjectiveProfile zero_curvature_profile(const ZeroCurvatureSpec& spec) {
  if (!(spec.c > 0.0)) throw Error(ErrorCode::SchemaError, "zero-curvature family needs c > 0");
  const double c = spec.c;
  const double sg = spec.sign == Branch::Plus ? 1.0 : -1.0;
  auto fn = [c, sg](auto r, auto s) { return (s + sg * sqrt(s * s - r + c)) / (c - r); };
  return {Profile::from_expression("zero_curvature", fn, [c](double r, double s) {
    return r <= c * (1.0 - 1e-9) && s * s - r + c > 0.0;
  })};
}

Jet2RS zero_curvature_p(const ZeroCurvatureSpec& spec, double r, double s) {
  return zero_curvature_profile(spec).p.jet(r, s);
}

double isotropic_equivalence(const std::function<double(double, double)>& p, const ScalarFn& u, double r,
                             double s_lo, double s_hi, double s0, int grid, const ScalarFn& du) {
  if (s_lo * s_hi <= 0.0 || s_lo * s0 <= 0.0) {
    throw Error(ErrorCode::SignCrossing, "equivalence range and basepoint must share one sign region");
  }
  const double v_fit = p(r, s0) / s0;
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / std::max(1, grid - 1);
    const double big_f = du ? integral_over_sigma2(u, du, r, s0, s, 1e-13).total(s)
                            : integral_over_sigma2(u, differenced(u), r, s0, s, kDifferencedQuadTol).total(s);
    worst = std::max(worst, std::abs(p(r, s) - s * (big_f + v_fit)));
  }
  return worst;
}

double remark4_equivalence(const ZeroCurvatureSpec& spec, double r, double s_lo, double s_hi,
                           std::optional<Branch> u_branch) {
  const ProjectiveProfile prof = zero_curvature_profile(spec);
  const Branch b = u_branch.value_or(spec.sign);
  const double c = spec.c;
  const double sg = b == Branch::Plus ? -1.0 : 1.0;
  const ScalarFn u = [c, sg](double t) { return sg / std::sqrt(c - t); };
  const ScalarFn du = [c, sg](double t) { return 0.5 * sg / ((c - t) * std::sqrt(c - t)); };
  return isotropic_equivalence([&](double rr, double ss) { return prof.p.value(rr, ss); }, u, r, s_lo, s_hi,
                               0.5 * std::sqrt(r), 64, du);
}

ProjectiveProfile funk_profile(double C) {
  auto fn = [C](auto r, auto s) { return (sqrt(s * s - r + 1.0) + s) / (2.0 * (1.0 - r)) + C * s; };
  return {Profile::from_expression("funk", fn,
                                   [](double r, double s) { return r < 1.0 && s * s - r + 1.0 > 0.0; })};
}

Jet2RS funk_p(double C, double r, double s) { return funk_profile(C).p.jet(r, s); }

ProjectiveProfile quadratic_profile(double c1, double c2_tilde) {
  auto fn = [c1, c2_tilde](auto r, auto s) { return s * s + (r + c2_tilde) * s + r - c1; };
  return {Profile::from_expression("quadratic_example", fn)};
}

std::pair<ProjectiveProfile, WeakIsoWitness> weakiso_example1(double mu, double eps) {
  if (!(mu > 0.0)) throw Error(ErrorCode::SchemaError, "weakiso1 needs mu > 0");
  auto fn = [mu, eps](auto r, auto s) { return mu / sqrt(eps - r) + 2.0 * s / (eps - r); };
  ProjectiveProfile p{Profile::from_expression("weakiso1", fn, [eps](double r, double) { return r < eps; })};
  WeakIsoWitness w{Profile::constant(1.0), [mu, eps](double r) { return mu / std::pow(eps - r, 1.5); }};
  return {p, w};
}

std::pair<ProjectiveProfile, WeakIsoWitness> weakiso_example2(double b, double c) {
  if (c == 0.0) throw Error(ErrorCode::SchemaError, "weakiso2 needs c != 0");
  auto gamma = [c](auto r, auto s) { return sqrt(1.0 + c * (r - s * s)) / (1.0 + c * r); };
  auto fn = [b, c, gamma](auto r, auto s) { return 2.0 * b * pow(1.0 + c * r, 0.25) / c * gamma(r, s); };
  RSDomain domain = [c](double r, double s) { return 1.0 + c * r > 0.0 && 1.0 + c * (r - s * s) > 0.0; };
  ProjectiveProfile p{Profile::from_expression("weakiso2", fn, domain)};
  WeakIsoWitness w{Profile::from_expression("weakiso2_gamma", gamma, domain),
                   [b, c](double r) { return b / std::pow(1.0 + c * r, 0.75); }};
  return {p, w};
}

SphericalProfile spaceform_spray(double mu) {
  auto alpha = [mu](auto r, auto s) { return -mu * s / (1.0 + mu * r); };
  return {Profile::from_expression("spaceform_alpha", alpha, [mu](double r, double) { return 1.0 + mu * r > 0.0; }),
          Profile::constant(0.0)};
}

ProjectiveProfile spaceform_projective(double mu) { return {spaceform_spray(mu).alpha}; }

ProjectiveProfile flat_profile() { return {Profile::constant(0.0)}; }

SphericalProfile flat_spherical() { return {Profile::constant(0.0), Profile::constant(0.0)}; }

namespace {

using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

struct Table {
  double r0, dr, s0, ds;
  std::vector<Spline> rows;  // one spline in s per r node

  Jet2RS jet(double r, double s) const {
    const std::size_t nr = rows.size();
    std::vector<double> v(nr), vs(nr), vss(nr);
    for (std::size_t i = 0; i < nr; ++i) {
      v[i] = rows[i](s);
      vs[i] = rows[i].prime(s);
      vss[i] = rows[i].double_prime(s);
    }
    const Spline a(v.data(), nr, r0, dr), b(vs.data(), nr, r0, dr), c(vss.data(), nr, r0, dr);
    Jet2RS j;
    j.v = a(r);
    j.d_r = a.prime(r);
    j.d_rr = a.double_prime(r);
    j.d_s = b(r);
    j.d_rs = b.prime(r);
    j.d_ss = c(r);
    return j;
  }
};

}  // namespace

ProjectiveProfile tabulated_profile(double r0, double dr, double s0, double ds,
                                    std::vector<std::vector<double>> values) {
  if (values.size() < 5 || !(dr > 0.0) || !(ds > 0.0)) {
    throw Error(ErrorCode::SchemaError, "tabulated profile needs >= 5 r-nodes and positive steps");
  }
  const std::size_t ns = values.front().size();
  if (ns < 5) throw Error(ErrorCode::SchemaError, "tabulated profile needs >= 5 s-nodes");
  auto table = std::make_shared<Table>();
  table->r0 = r0;
  table->dr = dr;
  table->s0 = s0;
  table->ds = ds;
  for (const auto& row : values) {
    if (row.size() != ns) throw Error(ErrorCode::SchemaError, "tabulated profile rows must have equal length");
    table->rows.emplace_back(row.data(), row.size(), s0, ds);
  }
  const double r1 = r0 + dr * static_cast<double>(values.size() - 1);
  const double s1 = s0 + ds * static_cast<double>(ns - 1);
  RSDomain domain = [=](double r, double s) { return r >= r0 && r <= r1 && s >= s0 && s <= s1; };
  return {Profile::from_jet(
      "custom_tabulated", [table](double r, double s) { return table->jet(r, s); }, domain)};
}

}  // namespace spraylab
