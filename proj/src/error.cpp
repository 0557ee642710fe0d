#include "sscnet/error.hpp"

namespace sscnet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::degenerate_kernel: return "degenerate_kernel";
    case ErrorCode::empty_graph: return "empty_graph";
    case ErrorCode::degenerate_degree: return "degenerate_degree";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

}  // namespace sscnet
