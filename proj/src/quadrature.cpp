#include "spraylab/quadrature.hpp"

#include "spraylab/types.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace spraylab {

double quad(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::NoConvergence, "quadrature bounds must be finite");
  }
  constexpr unsigned kMaxDepth = 20;
  double error = 0.0;
  double result = 0.0;
  // Boost's per-interval error estimate is not scaled by the interval half-width
  // and has a 2·eps floor, so short intervals recurse to full depth and report a
  // spurious error. Integrating over [-1, 1] keeps the estimate in the right units.
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  tol = std::max(tol, 8.0 * std::numeric_limits<double>::epsilon());
  try {
    result = half * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                        [&](double t) { return f(mid + half * t); }, -1.0, 1.0, kMaxDepth, tol, &error);
    error *= std::abs(half);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::NoConvergence, e.what());
  }
  if (!std::isfinite(result) || error > tol * (std::abs(half) + std::abs(result))) {
    std::ostringstream os;
    os << "adaptive quadrature on [" << a << ", " << b << "] reached error " << error << " for tolerance " << tol;
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return result;
}

}  // namespace spraylab
