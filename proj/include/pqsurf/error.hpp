#pragma once

#include <stdexcept>
#include <string>

namespace pqsurf {

enum class ErrorKind {
  InvalidType,
  InvalidArgument,
  NonIntegralGenus,
  GenusTooSmall,
  OrderLimitExceeded,
  NotAPermutation,
  ParseError,
  DuplicateId,
  OrderMismatch,
  DimensionMismatch,
  InconsistentSurface,
  NotRegular,
};

const char *to_string(ErrorKind kind);

/// Domain error raised by every module of the library.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace pqsurf
