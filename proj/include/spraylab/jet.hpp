#pragma once

#include "spraylab/hyperdual.hpp"
#include "spraylab/types.hpp"

#include <functional>

namespace spraylab {

/// Value and first/second partials of a scalar profile in (r, s).
/// The single d_rs stands for both mixed orders.
struct Jet2RS {
  double v = 0.0;
  double d_r = 0.0;
  double d_s = 0.0;
  double d_rr = 0.0;
  double d_rs = 0.0;
  double d_ss = 0.0;
};

using RSFunction = std::function<double(double r, double s)>;
using RSDomain = std::function<bool(double r, double s)>;

/// Central differences refined by Ridders' extrapolation. The first step is
/// halved while the stencil leaves `domain` (if given); DomainExit when ten
/// halvings do not suffice.
Jet2RS fd_jet2(const RSFunction& f, double r, double s, const ToleranceConfig& cfg = {},
               const RSDomain& domain = {});

/// Exact jet of an expression written generically in its scalar type, via hyper-dual seeding.
template <class Fn>
Jet2RS jet_from_expression(const Fn& fn, double r, double s) {
  Jet2RS j;
  Dual1 rr = fn(Dual1(r, 1.0, 1.0, 0.0), Dual1(s));
  Dual1 ss = fn(Dual1(r), Dual1(s, 1.0, 1.0, 0.0));
  Dual1 rs = fn(Dual1(r, 1.0, 0.0, 0.0), Dual1(s, 0.0, 1.0, 0.0));
  j.v = rr.a;
  j.d_r = rr.b;
  j.d_rr = rr.d;
  j.d_s = ss.b;
  j.d_ss = ss.d;
  j.d_rs = rs.d;
  return j;
}

/// Second-order Taylor composition of a jet with hyper-dual arguments.
/// Exact for any seeding because hyper-duals truncate at second order.
inline Dual1 lift_jet(const Jet2RS& j, const Dual1& r, const Dual1& s) {
  return {j.v, j.d_r * r.b + j.d_s * s.b, j.d_r * r.c + j.d_s * s.c,
          j.d_r * r.d + j.d_s * s.d + j.d_rr * r.b * r.c + j.d_rs * (r.b * s.c + s.b * r.c) +
              j.d_ss * s.b * s.c};
}

}  // namespace spraylab
