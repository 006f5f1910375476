#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epsilon {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { syntax, unknown_symbol, arity_mismatch, shadowing };

  ParseError(Kind kind, std::size_t position, const std::string& message)
      : Error("at " + std::to_string(position + 1) + ": " + message), kind_(kind), position_(position), message_(message) {}

  Kind kind() const { return kind_; }
  /// zero-based character offset into the parsed text
  std::size_t position() const { return position_; }
  /// the message without the position prefix
  const std::string& message() const { return message_; }

 private:
  Kind kind_;
  std::size_t position_;
  std::string message_;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

/// The evaluation step budget ran out. A desk-scale limit, not a semantic answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

}  // namespace epsilon
