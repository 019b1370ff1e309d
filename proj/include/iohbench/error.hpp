#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace iohbench {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument to an operation (dimension mismatch, invalid permutation, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Unknown function id, dataset id, parameter name.
class LookupError : public Error {
 public:
  using Error::Error;
};

class RegistrationError : public Error {
 public:
  using Error::Error;
};

// Configuration inconsistent with what is being observed or run.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Parse failure with its origin. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : Error(source + (line ? ":" + std::to_string(line) : std::string{}) + ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  IoError(const std::filesystem::path& path, const std::string& message)
      : Error(path.string() + ": " + message), path_(path) {}

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace iohbench
