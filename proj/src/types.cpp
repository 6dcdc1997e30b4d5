#include "spraylab/types.hpp"

namespace spraylab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::DomainExit: return "DomainExit";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SignCrossing: return "SignCrossing";
    case ErrorCode::SingularTensor: return "SingularTensor";
    case ErrorCode::DegenerateFlag: return "DegenerateFlag";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::EngineFailure: return "EngineFailure";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
  }
  return "Unknown";
}

void ToleranceConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(fd_step > 0.0)) {
    throw Error(ErrorCode::SchemaError, "tolerances must be strictly positive");
  }
  if (fd_levels < 2 || fd_levels > 16) {
    throw Error(ErrorCode::SchemaError, "fd_levels must lie in [2, 16]");
  }
}

}  // namespace spraylab
