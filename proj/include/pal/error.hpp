#pragma once

#include <stdexcept>
#include <string>

namespace pal {

enum class ErrorKind {
  InvalidArgument,
  DegreeMismatch,
  Reducible,
  OwnerMismatch,
  DivisionByZero,
  AmbientMismatch,
  CapExceeded,
  NotArc,
  NotSpread,
  NotRegular,
  KindMismatch,
  Parse,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace pal
