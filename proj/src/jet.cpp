#include "spraylab/jet.hpp"

#include "ridders.hpp"

#include <cmath>

namespace spraylab {

namespace {

struct Stencil {
  const RSFunction& f;
  const RSDomain& domain;

  double operator()(double r, double s) const {
    if (domain && !domain(r, s)) {
      throw Error(ErrorCode::DomainExit, "finite-difference stencil left the profile domain");
    }
    return f(r, s);
  }
};

// (d_r, d_s, d_rr, d_rs, d_ss) from one central stencil.
Vec central_partials(const Stencil& f, double f0, double r, double s, double hr, double hs) {
  const double frp = f(r + hr, s), frm = f(r - hr, s);
  const double fsp = f(r, s + hs), fsm = f(r, s - hs);
  Vec d(5);
  d << (frp - frm) / (2.0 * hr), (fsp - fsm) / (2.0 * hs), (frp - 2.0 * f0 + frm) / (hr * hr),
      (f(r + hr, s + hs) - f(r + hr, s - hs) - f(r - hr, s + hs) + f(r - hr, s - hs)) / (4.0 * hr * hs),
      (fsp - 2.0 * f0 + fsm) / (hs * hs);
  return d;
}

}  // namespace

Jet2RS fd_jet2(const RSFunction& f, double r, double s, const ToleranceConfig& cfg,
               const RSDomain& domain) {
  const Stencil st{f, domain};
  const double f0 = st(r, s);
  const double sr = std::max(1.0, std::abs(r)), ss = std::max(1.0, std::abs(s));
  const Vec d = detail::ridders(
      [&](double t) { return central_partials(st, f0, r, s, t * sr, t * ss); }, cfg.fd_step, cfg.fd_levels);
  Jet2RS j;
  j.v = f0;
  j.d_r = d(0);
  j.d_s = d(1);
  j.d_rr = d(2);
  j.d_rs = d(3);
  j.d_ss = d(4);
  return j;
}

}  // namespace spraylab
