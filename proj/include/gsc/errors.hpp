// Error taxonomy, aligned with the CLI exit codes:
//   ValidationError  -> exit 2: rejected input or unmet hypothesis (named in the message)
//   InstabilityError -> exit 3: a certified quantity changed when the truncation was enlarged
//   InternalError    -> exit 4: a self-check failed (d^2 != 0, rank certificate, associativity, ...)
#pragma once

#include <stdexcept>
#include <string>

namespace gsc {

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct InstabilityError : std::runtime_error {
  explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gsc
