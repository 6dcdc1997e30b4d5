#include "spraylab/geodesic.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace spraylab {

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::Completed: return "completed";
    case TerminationReason::DomainExit: return "domain_exit";
    case TerminationReason::VanishingSpeed: return "vanishing_speed";
  }
  return "unknown";
}

namespace {

struct State {
  Vec x, y;
};

State rk4_step(const SprayField& g, const State& s, double h) {
  const Vec k1x = s.y;
  const Vec k1y = -g(s.x, s.y);
  const Vec y2 = s.y + 0.5 * h * k1y;
  const Vec k2y = -g(s.x + 0.5 * h * k1x, y2);
  const Vec y3 = s.y + 0.5 * h * k2y;
  const Vec k3y = -g(s.x + 0.5 * h * y2, y3);
  const Vec y4 = s.y + h * k3y;
  const Vec k4y = -g(s.x + h * y3, y4);
  return {s.x + h / 6.0 * (k1x + 2.0 * y2 + 2.0 * y3 + y4),
          s.y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)};
}

double state_distance(const State& a, const State& b) {
  return std::max((a.x - b.x).lpNorm<Eigen::Infinity>(), (a.y - b.y).lpNorm<Eigen::Infinity>());
}

}  // namespace

GeodesicTrace geodesic_integrate(const SprayField& spray, const Vec& x0, const Vec& y0, double t_end,
                                 const GeodesicOptions& options) {
  if (!(options.step > 0.0)) throw Error(ErrorCode::SchemaError, "geodesic step must be positive");
  if (!(y0.norm() > 0.0)) throw Error(ErrorCode::ZeroDirection, "initial velocity must be nonzero");
  if (!spray.in_domain({x0, y0})) {
    throw Error(ErrorCode::DomainExit, "geodesic start lies outside the spray domain");
  }

  GeodesicTrace trace;
  State s{x0, y0};
  double t = 0.0;
  double h = options.step;
  trace.times.push_back(t);
  trace.positions.push_back(s.x);
  trace.velocities.push_back(s.y);

  long k = 0;
  while (t < t_end) {
    // Fixed steps land on multiples of `step` to avoid drift in t.
    double t_next = options.error_control ? std::min(t + h, t_end)
                                          : std::min(static_cast<double>(k + 1) * options.step, t_end);
    if (t_next - t <= 0.0) break;
    State next;
    try {
      if (options.error_control) {
        const double dt = t_next - t;
        const State full = rk4_step(spray, s, dt);
        const State half = rk4_step(spray, rk4_step(spray, s, 0.5 * dt), 0.5 * dt);
        const double err = state_distance(full, half);
        if (err > options.error_tol && 0.5 * dt >= options.min_step) {
          h = 0.5 * dt;
          continue;
        }
        next = half;
        if (err < options.error_tol / 64.0) h = std::min(2.0 * dt, options.step);
      } else {
        next = rk4_step(spray, s, t_next - t);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainExit && e.code() != ErrorCode::SignCrossing) throw;
      trace.terminated_reason = TerminationReason::DomainExit;
      trace.message = e.what();
      return trace;
    }
    if (!spray.in_domain({next.x, next.y})) {
      trace.terminated_reason = TerminationReason::DomainExit;
      trace.message = "trajectory left the spray domain";
      return trace;
    }
    s = std::move(next);
    t = t_next;
    ++k;
    trace.times.push_back(t);
    trace.positions.push_back(s.x);
    trace.velocities.push_back(s.y);
    if (s.y.norm() < 1e-12) {
      trace.terminated_reason = TerminationReason::VanishingSpeed;
      trace.message = "speed fell below 1e-12";
      return trace;
    }
  }
  return trace;
}

double straightness_deviation(const GeodesicTrace& trace) {
  if (trace.size() == 0) throw Error(ErrorCode::SchemaError, "empty geodesic trace");
  const Vec& x0 = trace.positions.front();
  const Vec dir = trace.velocities.front().normalized();
  double worst = 0.0;
  double length = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Vec d = trace.positions[i] - x0;
    worst = std::max(worst, (d - d.dot(dir) * dir).norm());
    if (i > 0) length += (trace.positions[i] - trace.positions[i - 1]).norm();
  }
  return worst / (1.0 + length);
}

void write_trace_csv(const GeodesicTrace& trace, std::ostream& out) {
  const int n = trace.size() ? static_cast<int>(trace.positions.front().size()) : 0;
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",x" << i;
  for (int i = 1; i <= n; ++i) out << ",y" << i;
  out << '\n';
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t k = 0; k < trace.size(); ++k) {
    put(trace.times[k]);
    for (int i = 0; i < n; ++i) out << ',', put(trace.positions[k](i));
    for (int i = 0; i < n; ++i) out << ',', put(trace.velocities[k](i));
    out << '\n';
  }
}

}  // namespace spraylab
