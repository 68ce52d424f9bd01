#pragma once

#include <stdexcept>
#include <string>

namespace relay_rgg {

/// Bad user input: malformed files, inconsistent flags, out-of-range
/// parameters. CLI maps this to exit code 1.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A deterministic invariant that construction guarantees was violated.
/// These are hard failures, never statistics. CLI maps this to exit code 2.
struct invariant_violation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace relay_rgg
