#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maglap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument values (bad q, K > n, empty ranges, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input violates an operation's precondition (antiparallel pair, zero degree, cycle).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Linear system does not determine its unknowns.
class IllPosedError : public Error {
 public:
  IllPosedError(std::size_t rank, std::size_t required, const std::string& what)
      : Error(what), rank_(rank), required_(required) {}
  std::size_t rank() const { return rank_; }
  std::size_t required_rank() const { return required_; }

 private:
  std::size_t rank_;
  std::size_t required_;
};

}  // namespace maglap
