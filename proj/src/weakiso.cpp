#include "spraylab/weakiso.hpp"

#include "spraylab/curvature.hpp"
#include "spraylab/invariants.hpp"

#include <cmath>
#include <map>

namespace spraylab {

WeakIsoResiduals weak_iso_residuals(const Jet2RS& p, const Jet2RS& gamma, double a, double s) {
  WeakIsoResiduals w;
  w.res1 = 2.0 * s * gamma.v * p.d_rs + gamma.v * p.d_ss +
           (2.0 * s * p.d_r - p.v * p.v + p.d_s) * gamma.d_s - (-p.v * p.d_s + 4.0 * p.d_r) * gamma.v;
  w.res2 = a * s * gamma.d_s - 2.0 * s * p.d_rs - a * gamma.v + 2.0 * p.d_r - p.d_ss;
  return w;
}

AmbientWeakIso ambient_weakiso_check(const ProjectiveProfile& p, const WeakIsoWitness& witness,
                                     const PointPair& pair) {
  const InvariantPartials d = invariant_partials(pair);
  const InvariantCoords rs = invariants(pair);
  const Jet2RS pj = p.p.jet(rs.r, rs.s);
  const Jet2RS gj = witness.gamma.jet(rs.r, rs.s);
  const double a = witness.a(rs.r);
  const double ny = d.norm_y;
  const Vec& x = pair.x;
  const Vec& y = pair.y;

  const ScalarData sd = scalar_data_from_jet(pj, pair);
  const double c8 = pj.v * pj.v - 2.0 * rs.s * pj.d_r - pj.d_s;
  const double dc8_ds = 2.0 * pj.v * pj.d_s - 2.0 * pj.d_r - 2.0 * rs.s * pj.d_rs - pj.d_ss;
  const Vec r_y = 2.0 * c8 * y + ny * ny * dc8_ds * d.ds_dy;

  const double big_gamma = ny * gj.v;
  const Vec gamma_y = gj.v / ny * y + ny * gj.d_s * d.ds_dy;
  const double theta = a * x.dot(y);
  const Vec theta_y = a * x;

  AmbientWeakIso out;
  out.res_a9 = gamma_y * sd.R - sd.tau * big_gamma;
  out.res_a10 = sd.tau - 0.5 * r_y - 1.5 * (gamma_y * theta - big_gamma * theta_y);
  out.scale = ny * (1.0 + std::abs(sd.R) / (ny * ny) + sd.tau.norm() / ny);
  return out;
}

AFit solve_a_given_gamma(const ProjectiveProfile& p, const Profile& gamma, const std::vector<RSPoint>& samples) {
  struct Row {
    double s, w, b, res1;
  };
  std::vector<double> order;
  std::map<double, std::vector<Row>> by_r;
  for (const RSPoint& pt : samples) {
    const Jet2RS pj = p.p.jet(pt.r, pt.s);
    const Jet2RS gj = gamma.jet(pt.r, pt.s);
    const double w = pt.s * gj.d_s - gj.v;
    const double b = 2.0 * pt.s * pj.d_rs - 2.0 * pj.d_r + pj.d_ss;
    const double res1 = weak_iso_residuals(pj, gj, 0.0, pt.s).res1;
    auto [it, fresh] = by_r.try_emplace(pt.r);
    if (fresh) order.push_back(pt.r);
    it->second.push_back({pt.s, w, b, res1});
  }

  AFit fit;
  for (double r : order) {
    const auto& rows = by_r.at(r);
    ALevel lv;
    lv.r = r;
    lv.total = static_cast<int>(rows.size());
    double num = 0.0, den = 0.0;
    for (const Row& row : rows) {
      lv.res1 = std::max(lv.res1, std::abs(row.res1));
      if (std::abs(row.w) < 1e-6) continue;
      num += row.w * row.b;
      den += row.w * row.w;
      ++lv.used;
    }
    if (lv.used == 0 || 10 * lv.used < 9 * lv.total) {
      throw Error(ErrorCode::IllConditioned, "s*gamma_s - gamma vanishes on too many samples at r = " +
                                                 std::to_string(r));
    }
    lv.a = num / den;
    for (const Row& row : rows) {
      if (std::abs(row.w) < 1e-6) continue;
      lv.deviation = std::max(lv.deviation, std::abs(row.b / row.w - lv.a));
    }
    fit.max_deviation = std::max(fit.max_deviation, lv.deviation);
    fit.max_res1 = std::max(fit.max_res1, lv.res1);
    fit.levels.push_back(lv);
  }
  return fit;
}

std::vector<RSPoint> a_fit_grid(const std::vector<double>& r_levels, int m, const Profile& p, const Profile& gamma) {
  std::vector<RSPoint> out;
  for (double r : r_levels) {
    for (int k = 1; k <= m; ++k) {
      const double s = std::sqrt(r) * k / m;
      if (p.in_domain(r, s) && gamma.in_domain(r, s)) out.push_back({r, s});
    }
  }
  return out;
}

}  // namespace spraylab
