#pragma once

#include <algorithm>
#include <optional>

#include "sscnet/error.hpp"
#include "sscnet/types.hpp"

namespace support {

/// Error code thrown by f, or nullopt when f returns normally.
template <class F>
std::optional<sscnet::ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const sscnet::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline bool bit_equal(const sscnet::Matrix& a, const sscnet::Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::equal(a.data(), a.data() + a.size(), b.data());
}

}  // namespace support
