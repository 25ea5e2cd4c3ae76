#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankone {

/// Base of every error raised by the library. The CLI maps all of them to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public SyntaxError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : SyntaxError("unknown identifier '" + name + "'", offset), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class WrongVariable : public SyntaxError {
 public:
  WrongVariable(const std::string& found, const std::string& expected, std::size_t offset)
      : SyntaxError("variable '" + found + "' used, expected '" + expected + "'", offset) {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// A scalar expression produced NaN inside the requested domain.
class NonFiniteError : public DomainError {
 public:
  using DomainError::DomainError;
};

class SymmetryViolation : public Error {
 public:
  SymmetryViolation(double worst_t, double residual)
      : Error("h(t) != h(1/t): worst t = " + std::to_string(worst_t) +
              ", residual = " + std::to_string(residual)),
        worst_t_(worst_t),
        residual_(residual) {}
  double worst_t() const noexcept { return worst_t_; }
  double residual() const noexcept { return residual_; }

 private:
  double worst_t_;
  double residual_;
};

class NonPositiveDeterminant : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil stepped outside GL+(2).
class LeftGLplus : public Error {
 public:
  using Error::Error;
};

class UnknownCatalogId : public Error {
 public:
  using Error::Error;
};

class DegenerateGrid : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace rankone
