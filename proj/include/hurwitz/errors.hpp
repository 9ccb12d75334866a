#pragma once

#include <stdexcept>
#include <string>

namespace hurwitz {

// Bad input: unknown family, malformed spec, unsupported parameters.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A size or raw-tuple budget would be exceeded.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An oracle disagreed with the computation. Never caught and ignored.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ConsistencyError(what);
}

}  // namespace hurwitz
