#pragma once

#include <stdexcept>
#include <string>

namespace dyb {

enum class ErrorKind {
  Parse,
  Precondition,
  ShapeMismatch,
  Pole,
  NotRegular,
  Degenerate,
  Convention,
  InvalidGauge,
  InvalidSubalgebra,
  InvalidTriple,
  UnsupportedCycle,
  Unsupported,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

inline void require(bool cond, ErrorKind k, const std::string& what) {
  if (!cond) fail(k, what);
}

}  // namespace dyb
