#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroInverse : public Error {
 public:
  ZeroInverse() : Error("inverse of zero") {}
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(std::size_t needed, std::size_t given)
      : Error("evaluation point has " + std::to_string(given) +
              " coordinates, needs " + std::to_string(needed)),
        needed(needed),
        given(given) {}
  std::size_t needed;
  std::size_t given;
};

class ExpansionTooLarge : public Error {
 public:
  explicit ExpansionTooLarge(std::size_t cap)
      : Error("symbolic expansion exceeded the cap of " + std::to_string(cap) +
              " monomials"),
        cap(cap) {}
  std::size_t cap;
};

class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands live over different prime fields") {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line(line),
        column(column),
        message(message) {}
  std::size_t line;
  std::size_t column;
  std::string message;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised by structural validation of an algebra table.
class ValidationError : public Error {
 public:
  enum class Kind { NotAssociative, BadIdentity, Malformed };
  ValidationError(Kind kind, const std::string& what) : Error(what), kind(kind) {}
  Kind kind;
};

class NotAZeroDivisor : public Error {
 public:
  using Error::Error;
};

// Unreachable for valid inputs; carries the solver state in what().
class NoIdempotentFound : public Error {
 public:
  using Error::Error;
};

class NotIdempotent : public Error {
 public:
  NotIdempotent() : Error("element is not idempotent") {}
};

class TrivialIdempotent : public Error {
 public:
  TrivialIdempotent() : Error("idempotent is 0 or 1") {}
};

class NotCommutative : public Error {
 public:
  NotCommutative() : Error("algebra is not commutative") {}
};

class NotUpperTriangular : public Error {
 public:
  NotUpperTriangular() : Error("sequence is not upper-triangular 2x2") {}
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace pit
