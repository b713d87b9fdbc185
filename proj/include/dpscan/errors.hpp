#pragma once

#include <stdexcept>
#include <string>

namespace dpscan {

// Error taxonomy mirrors the process exit codes: 2 input, 3 schema, 4 internal.
enum class ErrorCode : int {
  Ok = 0,
  Input = 2,
  Schema = 3,
  Internal = 4,
  Argument = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class InputError : public Error {
 public:
  explicit InputError(std::string message) : Error(ErrorCode::Input, std::move(message)) {}
};

// Malformed sidecar/config/rules content. `where` should name the offending
// file and record so the CLI diagnostic is actionable.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::string message) : Error(ErrorCode::Schema, std::move(message)) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(std::string message) : Error(ErrorCode::Internal, std::move(message)) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(std::string message) : Error(ErrorCode::Argument, std::move(message)) {}
};

}  // namespace dpscan
