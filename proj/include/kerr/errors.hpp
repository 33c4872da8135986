#ifndef KERR_ERRORS_HPP
#define KERR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kerr {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class DenominatorPole : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Two independent evaluation paths of the same quantity disagree.
class CrossCheckFailure : public Error {
 public:
  using Error::Error;
};

class BasisMismatch : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// A solved state violates hermiticity, trace or positivity beyond slack.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class CutoffTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace kerr

#endif  // KERR_ERRORS_HPP
