#pragma once

#include <stdexcept>
#include <string>

namespace rel {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (SMILES, Newick, CSV, JSONL, model output framing).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Generator or operation called with arguments that cannot be satisfied.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A stored instance contradicts its own rule or answer.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Dataset/record file violates the line schema. Carries the 1-based line.
class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace rel
