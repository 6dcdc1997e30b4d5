#include "spraylab/invariants.hpp"

namespace spraylab {

namespace {

double checked_norm(const Vec& y) {
  double n = y.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::ZeroDirection, "direction y must be nonzero");
  return n;
}

}  // namespace

InvariantCoords invariants(const PointPair& pair) {
  double ny = checked_norm(pair.y);
  return {pair.x.squaredNorm(), pair.x.dot(pair.y) / ny};
}

InvariantPartials invariant_partials(const PointPair& pair) {
  const Vec& x = pair.x;
  const Vec& y = pair.y;
  const int n = pair.dim();
  InvariantPartials d;
  d.norm_y = checked_norm(y);
  d.xy = x.dot(y);
  const double ny = d.norm_y;
  const double ny2 = ny * ny;
  const double ny3 = ny2 * ny;
  const double ny5 = ny3 * ny2;

  d.dr_dx = 2.0 * x;
  d.ds_dx = y / ny;
  d.ds_dy = (x * ny2 - y * d.xy) / ny3;
  d.d2s_dxdy = (Mat::Identity(n, n) * ny2 - y * y.transpose()) / ny3;
  d.d2s_dydy = -d.xy / ny3 * Mat::Identity(n, n) +
               (3.0 * d.xy * y * y.transpose() - ny2 * (x * y.transpose() + y * x.transpose())) / ny5;
  return d;
}

}  // namespace spraylab
