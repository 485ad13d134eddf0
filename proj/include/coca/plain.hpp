// Reachability for automata with one global guard.
//
// Post(a) from p to q is an interval up to at most three missing points
// (its two closure endpoints and a itself), so it is represented by its
// closure plus an excluded set. The closure endpoints and the status of the
// three special points are decided by path queries on the transition graph:
// path existence and bounded-length optimisation of the positive or
// negative part of the effect, under sign conditions on the path.

#ifndef COCA_PLAIN_HPP
#define COCA_PLAIN_HPP

#include "coca/interval.hpp"
#include "coca/model.hpp"

#include <optional>
#include <vector>

namespace coca {

/// Sign conditions on a path. dplus is the sum of positive updates, dminus
/// the sum of negative ones; first/last refer to the first and last nonzero
/// update. Unset flags impose nothing.
struct PathConditions {
  bool dplus_nonzero = false;
  bool dminus_nonzero = false;
  bool dplus_zero = false;
  bool dminus_zero = false;
  bool first_neg = false;
  bool first_pos = false;
  bool last_neg = false;
  bool last_pos = false;

  /// Throws Error when a flag and its negation are both set.
  void validate() const;
};

/// Paths are sequences of edges; the empty path joins every node to itself.
struct Graph {
  std::size_t nodes = 0;
  std::vector<Transition> edges;

  static Graph of(const Coca& v) { return {v.num_states(), v.transitions}; }
};

bool cond_paths_exist(const Graph& g, StateId p, StateId q, const PathConditions& c);

enum class Opt { Min, Max };
enum class Weight { Plus, Minus };

/// Optimum of dplus or dminus over condition-satisfying p->q paths with at
/// most maxlen edges (default: number of nodes). -inf for Max and +inf for
/// Min when there is no such path.
Ext cond_paths_opt(const Graph& g, StateId p, StateId q, const PathConditions& c, Opt opt, Weight w,
                   std::optional<std::size_t> maxlen = std::nullopt);

/// Post(a) from p to q is nonempty.
bool enab_test(const Coca& v, const Rat& a, StateId p, StateId q);

enum class Sign { Negative, Positive };

/// Some transition t of the given sign with a enabled towards In(t), a path
/// from In(t) to q, and a path from Out(t) back to In(t).
bool admissible_cycle(const Coca& v, const Rat& a, StateId p, StateId q, Sign sign);

struct Endpoints {
  Ext lo;
  Ext hi;
};

/// Infimum and supremum of Post(a); (+inf, -inf) when Post(a) is empty.
Endpoints closure_endpoints(const Coca& v, const Rat& a, StateId p, StateId q);

bool a_in_post(const Coca& v, const Rat& a, StateId p, StateId q);

struct Attained {
  bool lo = false;
  bool hi = false;
};

/// Which closure endpoints belong to Post(a).
Attained endpoint_membership(const Coca& v, const Rat& a, StateId p, StateId q);

struct PostRepr {
  Interval closure;
  /// Sorted, subset of {lo, a, hi}.
  std::vector<Rat> excluded;

  bool contains(const Rat& b) const;
  /// The represented set as a canonical union.
  IntervalSet as_set() const;
  std::string str() const;
};

PostRepr post_repr(const Coca& v, const Rat& a, StateId p, StateId q);
bool reach(const Coca& v, StateId p, const Rat& a, StateId q, const Rat& b);

/// Reachability with equality tests: every visit to a tested state must
/// carry exactly the tested value.
bool eq_reach(const EqCoca& v, StateId p, const Rat& a, StateId q, const Rat& b);

}  // namespace coca

#endif  // COCA_PLAIN_HPP
