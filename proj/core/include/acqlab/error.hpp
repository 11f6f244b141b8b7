#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acqlab {

enum class ErrorCode {
  radius_out_of_range,
  invalid_matching,
  no_edges,
  disconnected,
  not_a_path,
  missing_transfer_matching,
  concentration_failed,
  path_too_short,
  no_saturating_matching,
  not_all_acquainted,
  matching_missing,
  cell_pair_strategy_failed,
  structure_unusable,
  move_failed,
  capacity_exceeded,
  no_crucial_path,
  no_crucial,
  config_error,
  domain_error,
  schema_error,
};

std::string_view to_string(ErrorCode code);

// Base of every exception thrown by the library. The code lets callers and
// tests tell failure modes apart without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace acqlab
