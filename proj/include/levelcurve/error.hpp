#pragma once

#include <stdexcept>
#include <string>

namespace lvl {

/// Failure classes map one-to-one onto CLI exit codes.
enum class ErrorKind {
  Usage = 1,        ///< malformed input or violated precondition
  Numerical = 2,    ///< root finding / tracing / meshing failed
  Certificate = 3,  ///< a checked theorem or invariant did not hold
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class CertificateError : public Error {
 public:
  explicit CertificateError(const std::string& what) : Error(ErrorKind::Certificate, what) {}
};

}  // namespace lvl
