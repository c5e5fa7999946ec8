// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace satgw {

inline constexpr const char* version_string = "0.1.0";

/// Scenario or study file could not be read or does not match the schema.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Traffic demand exceeds what the gateway fleet can ever provide.
class InfeasibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input is too large for an enumeration-based method.
class SizeLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace satgw
