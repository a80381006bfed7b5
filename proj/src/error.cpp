#include "cohom1/error.hpp"

namespace cohom1 {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidTriple: return "InvalidTriple";
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InadmissibleJ: return "InadmissibleJ";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::UnequalMultiplicities: return "UnequalMultiplicities";
    case ErrorCode::OddG: return "OddG";
    case ErrorCode::ProfileTooCoarse: return "ProfileTooCoarse";
    case ErrorCode::SingularStart: return "SingularStart";
    case ErrorCode::TrajectoryEscaped: return "TrajectoryEscaped";
    case ErrorCode::IntegratorStall: return "IntegratorStall";
    case ErrorCode::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

}  // namespace cohom1
