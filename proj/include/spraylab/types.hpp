#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spraylab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorCode {
  ZeroDirection,
  DomainExit,
  NoConvergence,
  SignCrossing,
  SingularTensor,
  DegenerateFlag,
  IllConditioned,
  EngineFailure,
  SchemaError,
  UnknownFamily,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Base point x and direction y, the evaluation site of every tensor.
struct PointPair {
  Vec x;
  Vec y;

  int dim() const { return static_cast<int>(x.size()); }
};

struct ToleranceConfig {
  double abs_tol = 1e-7;
  double rel_tol = 1e-7;
  // Central differences start at fd_step·max(1, |coordinate|) and are refined by
  // Ridders' extrapolation over at most fd_levels steps.
  double fd_step = 0.02;
  int fd_levels = 6;

  void validate() const;
};

/// Largest absolute entry.
inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// ‖a − b‖_max / max(‖b‖_max, floor). `floor` guards reference values near zero.
inline double relative_max_error(const Mat& a, const Mat& b, double floor) {
  return max_abs(a - b) / std::max(max_abs(b), floor);
}

}  // namespace spraylab
