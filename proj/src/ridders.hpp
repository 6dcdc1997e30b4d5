#pragma once

#include "spraylab/types.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace spraylab::detail {

// Ridders' extrapolation of a difference quotient whose error is a series in
// h². Steps shrink by `kShrink` per level; each component keeps the tableau
// entry with the smallest error estimate, and the search stops once every
// component's estimate has grown by kSafe over its best. That stop is only
// trusted from kMinLevels on: large first steps can sit before the asymptotic
// regime, where two neighbouring estimates agree by accident. The first step is
// halved (at most ten times) while `estimate` throws DomainExit.
inline Vec ridders(const std::function<Vec(double h)>& estimate, double h0, int max_levels) {
  constexpr double kShrink = 1.4, kShrink2 = kShrink * kShrink, kSafe = 2.0;
  constexpr int kMinLevels = 4;
  double h = h0;
  Vec first;
  for (int tries = 0;; ++tries) {
    try {
      first = estimate(h);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainExit || tries >= 10) throw;
      h *= 0.5;
    }
  }
  const Eigen::Index m = first.size();
  std::vector<Vec> prev{first}, cur;
  Vec best = first;
  Vec err = Vec::Constant(m, std::numeric_limits<double>::infinity());
  for (int i = 1; i < max_levels; ++i) {
    h /= kShrink;
    cur.assign(1, estimate(h));
    double fac = kShrink2;
    for (int j = 1; j <= i; ++j) {
      cur.push_back((cur[j - 1] * fac - prev[j - 1]) / (fac - 1.0));
      fac *= kShrink2;
      for (Eigen::Index c = 0; c < m; ++c) {
        const double e =
            std::max(std::abs(cur[j](c) - cur[j - 1](c)), std::abs(cur[j](c) - prev[j - 1](c)));
        if (e <= err(c)) {
          err(c) = e;
          best(c) = cur[j](c);
        }
      }
    }
    bool done = i + 1 >= kMinLevels;
    for (Eigen::Index c = 0; c < m && done; ++c) done = std::abs(cur[i](c) - prev[i - 1](c)) >= kSafe * err(c);
    if (done) break;
    prev.swap(cur);
  }
  return best;
}

}  // namespace spraylab::detail
