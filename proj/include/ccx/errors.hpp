#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ccx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: wrong lengths, out-of-range parameters, bad files.
class InputError : public Error {
 public:
  using Error::Error;
};

// Parameters that do not describe an achievable instance.
class ParameterError : public InputError {
 public:
  using InputError::InputError;
};

// Inputs outside a protocol's promise. `clause` names the violated condition.
class PromiseViolation : public Error {
 public:
  PromiseViolation(std::string clause, const std::string& detail)
      : Error("promise violation (" + clause + "): " + detail), clause_(std::move(clause)) {}
  const std::string& clause() const { return clause_; }

 private:
  std::string clause_;
};

// Files that cannot be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

class HandshakeError : public TransportError {
 public:
  using TransportError::TransportError;
};

// A predicate with no defined transition was handed to Paturi's formula.
class NoTransition : public InputError {
 public:
  using InputError::InputError;
};

// Rank embeddings were requested for a function with no non-constant slice.
class NoBound : public InputError {
 public:
  using InputError::InputError;
};

// Something that must hold by construction did not.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccx
