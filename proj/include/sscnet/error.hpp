#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sscnet {

enum class ErrorCode {
  invalid_input,
  dimension_mismatch,
  degenerate_kernel,
  empty_graph,
  degenerate_degree,
  index_out_of_range,
  io,
  parse,
  internal,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sscnet
