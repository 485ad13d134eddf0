// 3-SAT reductions to acyclic parametric automata, and integer rescaling
// of parameter valuations.

#ifndef COCA_GADGETS_HPP
#define COCA_GADGETS_HPP

#include "coca/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace coca {

/// Clauses of nonzero literals over variables 1..num_vars (DIMACS style).
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  /// Throws ParseError on malformed input and EmptyClause on "0" alone.
  static Cnf parse_dimacs(std::string_view text);
  std::string dimacs() const;
  /// Throws EmptyClause, or ModelError for a literal out of range.
  void validate() const;
  bool satisfied_by(const std::vector<bool>& assignment) const;
};

enum class GadgetVariant { Guards, Updates };

struct Gadget {
  ParametricCoca automaton;
  StateId from = 0;
  StateId to = 0;
};

/// Parameter x<i> for variable i. Variable gadgets p<i> -> q<i> force x<i>
/// to encode a truth value, clause gadgets r<j> -> s<j> check one literal;
/// all pieces are joined by 0-transitions. Reaching `to` with 0 from `from`
/// with 0 is possible for some valuation iff cnf is satisfiable.
Gadget gen_sat_gadget(const Cnf& cnf, GadgetVariant variant);

/// Parameter name of variable i (1-based).
std::string gadget_param(int var);

/// The product of the denominators of mu.
Rat rescale_factor(const Valuation& mu);
/// mu scaled by rescale_factor(mu). Throws ParametricGuardPresent when a
/// guard of p mentions a parameter.
Valuation rescale_to_integer(const Valuation& mu, const ParametricCoca& p);

}  // namespace coca

#endif  // COCA_GADGETS_HPP
