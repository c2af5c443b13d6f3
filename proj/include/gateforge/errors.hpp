#pragma once

#include <stdexcept>
#include <string>

namespace gateforge {

// Base error carrying a stable machine-readable code used by report writers.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message)
      : Error("E_DIMENSION", message) {}
};

class HermiticityError : public Error {
 public:
  explicit HermiticityError(const std::string& message)
      : Error("E_HERMITICITY", message) {}
};

class UnitarityError : public Error {
 public:
  explicit UnitarityError(const std::string& message)
      : Error("E_UNITARITY", message) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& message)
      : Error("E_CONVERGENCE", message) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& message)
      : Error("E_SHAPE", message) {}
};

class FitError : public Error {
 public:
  explicit FitError(const std::string& message) : Error("E_FIT", message) {}
};

class LinearTermError : public Error {
 public:
  explicit LinearTermError(const std::string& message)
      : Error("E_LINEAR_TERM", message) {}
};

class PurelyOscillatoryError : public Error {
 public:
  explicit PurelyOscillatoryError(const std::string& message)
      : Error("E_PURELY_OSCILLATORY", message) {}
};

class GridError : public Error {
 public:
  explicit GridError(const std::string& message) : Error("E_GRID", message) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error("E_VALIDATION", message) {}
};

}  // namespace gateforge
