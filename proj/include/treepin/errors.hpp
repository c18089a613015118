#pragma once

#include <stdexcept>
#include <string>

namespace treepin {

// Root of every error the toolkit throws on bad input or failed checks.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldError : public Error {
 public:
  using Error::Error;
};

// Operand shapes do not fit the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Consistent shapes but an inconsistent linear system.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Instance violates a model invariant (tree-ness, multiplicities, rank of W).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ReductionError : public Error {
 public:
  using Error::Error;
};

class SynthesisError : public Error {
 public:
  using Error::Error;
};

class SimulationError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured budget.
class OracleBudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace treepin
