#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cad {

enum class ErrorKind {
  OrderingMismatch,
  UndefinedInput,
  DegenerateResultant,
  DegenerateDiscriminant,
  Parse,
  DimensionMismatch,
  WellOriented,
  PrimitivityViolation,
  CapExceeded,
  Precondition,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax error in polynomial or formula text; `position` is a byte offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& msg)
      : Error(ErrorKind::Parse, msg + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cad
