#pragma once

#include "spraylab/hyperdual.hpp"
#include "spraylab/types.hpp"

#include <functional>
#include <optional>
#include <string>

namespace spraylab {

template <class T>
using MetricFn = std::function<T(const DualVec<T>& x, const DualVec<T>& y)>;

/// A Finsler function F(x, y), 1-homogeneous in y, evaluable in plain doubles and
/// in first/second-level hyper-duals.
struct FinslerMetric {
  std::string name;
  int dim = 0;
  MetricFn<double> f;
  MetricFn<Dual1> f_dual;
  MetricFn<Dual2> f_dual2;
  std::function<bool(const Vec& x)> domain;      // empty means everywhere
  std::optional<double> constant_flag_curvature;  // known value, if any
  double sample_radius = 1.0;

  bool in_domain(const Vec& x) const { return !domain || domain(x); }

  /// F(x, y) with a domain check (throws DomainExit).
  double operator()(const Vec& x, const Vec& y) const;
};

/// Metric from an expression written generically in its scalar type:
/// fn(const std::vector<T>& x, const std::vector<T>& y) -> T.
template <class Fn>
FinslerMetric make_metric(std::string name, int dim, Fn fn, std::function<bool(const Vec&)> domain = {}) {
  FinslerMetric m;
  m.name = std::move(name);
  m.dim = dim;
  m.f = fn;
  m.f_dual = fn;
  m.f_dual2 = fn;
  m.domain = std::move(domain);
  return m;
}

}  // namespace spraylab
