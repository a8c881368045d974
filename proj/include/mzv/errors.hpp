#pragma once

#include <stdexcept>
#include <string>

namespace mzv {

/// Malformed textual input (compositions, words, CLI arguments).
class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

/// A well-formed request that violates an operation's precondition,
/// e.g. a non-admissible composition or an undefined double-tail index.
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace mzv
