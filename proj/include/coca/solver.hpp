// Running an external SMT-LIB 2 solver on an emitted sentence.

#ifndef COCA_SOLVER_HPP
#define COCA_SOLVER_HPP

#include "coca/formula.hpp"

#include <optional>
#include <string>

namespace coca {

enum class SolveResult { Sat, Unsat, Unknown };

std::string to_string(SolveResult r);

struct SolverConfig {
  /// Shell command reading the script on stdin.
  std::string command = "z3 -in";
  int timeout_s = 30;
};

/// Runs the solver on an SMT-LIB script. A timeout gives Unknown. Throws
/// SolverNotFound when the command cannot be started and
/// MalformedSolverOutput when the first answer is not sat, unsat or unknown.
SolveResult run_solver(const std::string& script, const SolverConfig& cfg);
SolveResult solve(const Sentence& s, const SolverConfig& cfg);

/// "z3 -in" when z3 is on PATH, otherwise nullopt.
std::optional<std::string> detect_solver();

}  // namespace coca

#endif  // COCA_SOLVER_HPP
