#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mixgap {

/// Typed failure categories. The names returned by to_string() are part of
/// the CLI contract (JSON error objects on stderr).
enum class ErrorCode {
  InvalidArgument,
  Reducible,
  NotMixedByCap,
  Nonconvergent,
  NotSymmetric,
  NoConvergence,
  TrajectoryTooShort,
  UnvisitedState,
  NoUsableK,
  NoTrigger,
  DegenerateEmpiricalGap,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors that describe the data or the chain (CLI exit code 2)
/// rather than the environment (exit code 1).
bool is_domain_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::vector<std::size_t> states);

  ErrorCode code() const noexcept { return code_; }

  /// States involved in the failure (UNVISITED_STATE lists the zero-count states).
  const std::vector<std::size_t>& states() const noexcept { return states_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> states_;
};

}  // namespace mixgap
