#pragma once

#include <functional>

namespace spraylab {

/// Adaptive Gauss–Kronrod quadrature of f on [a, b].
/// Guarantees error estimate ≤ tol·((b − a)/2 + |result|) or throws NoConvergence.
double quad(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

}  // namespace spraylab
