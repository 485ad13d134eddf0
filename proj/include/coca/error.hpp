#ifndef COCA_ERROR_HPP
#define COCA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace coca {

/// Base class of every error the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text: rationals, intervals, automaton documents, DIMACS.
class ParseError : public Error {
public:
  using Error::Error;
};

/// A model violates a structural constraint (undeclared state or parameter,
/// missing valuation entry, cyclic graph where an acyclic one is required).
class ModelError : public Error {
public:
  using Error::Error;
};

/// A graph that must be acyclic has a cycle.
class NotAcyclic : public ModelError {
public:
  using ModelError::ModelError;
};

/// Integer rescaling needs parameters to occur on updates only.
class ParametricGuardPresent : public ModelError {
public:
  using ModelError::ModelError;
};

/// A CNF clause without literals.
class EmptyClause : public ModelError {
public:
  using ModelError::ModelError;
};

/// A flag of an interval encoding outside {0,1,2}.
class BadFlag : public Error {
public:
  using Error::Error;
};

/// Formula evaluation met a variable the valuation does not assign.
class UnboundVariable : public Error {
public:
  using Error::Error;
};

/// A run whose transitions do not chain or whose scalars leave (0,1].
class BrokenChain : public Error {
public:
  using Error::Error;
};

/// External solver failures other than a clean sat/unsat/unknown answer.
class SolverError : public Error {
public:
  using Error::Error;
};

class SolverNotFound : public SolverError {
public:
  using SolverError::SolverError;
};

class MalformedSolverOutput : public SolverError {
public:
  using SolverError::SolverError;
};

/// An internal invariant of the fixpoint engine was violated. Never expected
/// on valid input; raised instead of returning a wrong answer.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// A cycle handed to the accelerator fails one of its defining clauses.
class InvalidCycle : public InvariantViolation {
public:
  using InvariantViolation::InvariantViolation;
};

/// A fixpoint phase ran past its step budget without stabilizing or
/// producing a usable cycle.
class BudgetExceeded : public InvariantViolation {
public:
  using InvariantViolation::InvariantViolation;
};

/// The number of accelerations exceeded its proven bound.
class SafeguardTripped : public InvariantViolation {
public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace coca

#endif  // COCA_ERROR_HPP
