#pragma once

#include <stdexcept>
#include <string>

namespace hypsite {

// Every failure raised by the library falls into one of these categories.
// The CLI maps each category onto its own exit code.
enum class ErrorKind {
  structural,  // malformed rotation system or graph
  format,      // unreadable or version-mismatched file
  domain,      // argument outside an operation's precondition
  hypothesis,  // graph fails a theorem-level precondition
  budget,      // requested work exceeds a declared budget
  truncation,  // a finite truncation is too small for the request
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error(ErrorKind::structural, what) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(ErrorKind::format, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& what) : Error(ErrorKind::hypothesis, what) {}
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(ErrorKind::budget, what) {}
};

class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what) : Error(ErrorKind::truncation, what) {}
};

}  // namespace hypsite
