#pragma once

#include <stdexcept>
#include <string>

namespace ueqc {

// Every failure raised by the toolkit derives from Error so front-ends can
// map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class PromiseViolation : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

class NotASignRepresentation : public Error {
 public:
  using Error::Error;
};

class NormMismatch : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

// A computed optimum failed its own exact certificate check.
class CertificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ueqc
