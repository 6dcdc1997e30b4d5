#pragma once

#include "spraylab/spray.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace spraylab {

enum class TerminationReason { Completed, DomainExit, VanishingSpeed };

std::string_view to_string(TerminationReason reason);

struct GeodesicTrace {
  std::vector<double> times;
  std::vector<Vec> positions;   // x(t)
  std::vector<Vec> velocities;  // ẋ(t)
  TerminationReason terminated_reason = TerminationReason::Completed;
  std::string message;

  std::size_t size() const { return times.size(); }
};

struct GeodesicOptions {
  double step = 1e-3;
  // Step-halving control: compare one step against two half steps.
  bool error_control = false;
  double error_tol = 1e-10;
  double min_step = 1e-12;
};

/// Classical RK4 on ẋ = y, ẏ = −G(x, y) up to time T. Leaving the spray's
/// domain or |y| < 1e-12 ends the trace early; the partial trace is returned.
GeodesicTrace geodesic_integrate(const SprayField& spray, const Vec& x0, const Vec& y0, double t_end,
                                 const GeodesicOptions& options = {});

/// Max distance from x(t) to the line x0 + span{ẋ(0)}, over (1 + path length).
double straightness_deviation(const GeodesicTrace& trace);

/// CSV with header `t,x1..xn,y1..yn`, 17 significant digits.
void write_trace_csv(const GeodesicTrace& trace, std::ostream& out);

}  // namespace spraylab
