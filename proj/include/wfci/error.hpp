#pragma once

#include <stdexcept>
#include <string>

namespace wfci {

// Base of every error raised by the library. The CLI maps each subclass to
// its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: wrong arity, empty lists, out-of-range values.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition of an operation does not hold.
class PreconditionViolation : public Error {
 public:
  PreconditionViolation(std::string tag, const std::string& what)
      : Error(what), tag_(std::move(tag)) {}
  explicit PreconditionViolation(const std::string& what)
      : PreconditionViolation("precondition", what) {}

  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

// Embedded or user-supplied classification data failed its integrity check.
class DataIntegrityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A constructive certificate and a table certificate disagree.
class ClassificationInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace wfci
