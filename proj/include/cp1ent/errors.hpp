#pragma once

#include <stdexcept>
#include <string>

namespace cp1ent {

// Base of every error the library throws. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Precondition violations (exit code 2 in the CLI).
class PreconditionError : public Error {
public:
  using Error::Error;
};

class ZeroState : public PreconditionError {
public:
  ZeroState() : PreconditionError("state has zero norm") {}
};

class NotNormalized : public PreconditionError {
public:
  explicit NotNormalized(double norm)
      : PreconditionError("state is not normalized (norm = " + std::to_string(norm) + ")") {}
};

class IndexOutOfRange : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

class DomainError : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

class NotOrthonormal : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

class SingularFit : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

}  // namespace cp1ent
