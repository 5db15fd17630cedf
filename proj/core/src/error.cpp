#include "mixgap/error.hpp"

#include <utility>

namespace mixgap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::Reducible: return "REDUCIBLE";
    case ErrorCode::NotMixedByCap: return "NOT_MIXED_BY_CAP";
    case ErrorCode::Nonconvergent: return "NONCONVERGENT";
    case ErrorCode::NotSymmetric: return "NOT_SYMMETRIC";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::TrajectoryTooShort: return "TRAJECTORY_TOO_SHORT";
    case ErrorCode::UnvisitedState: return "UNVISITED_STATE";
    case ErrorCode::NoUsableK: return "NO_USABLE_K";
    case ErrorCode::NoTrigger: return "NO_TRIGGER";
    case ErrorCode::DegenerateEmpiricalGap: return "DEGENERATE_EMPIRICAL_GAP";
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::Io: return "IO_ERROR";
  }
  return "UNKNOWN";
}

bool is_domain_error(ErrorCode code) noexcept {
  return code != ErrorCode::Parse && code != ErrorCode::Io;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::vector<std::size_t> states)
    : Error(code, message) {
  states_ = std::move(states);
}

}  // namespace mixgap
