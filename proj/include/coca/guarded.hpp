// Reachability for automata with per-state guards.
//
// The reachable values from p(a) form, per state, a finite union of
// intervals. They are computed as the least fixpoint of the one-step
// successor operator on state-indexed interval sets. Plain iteration can
// creep forever towards a bound (a +1 self-loop under [0,100] gains one unit
// per step), so iteration is interleaved with acceleration: when the recent
// iterates contain a cycle that keeps pushing one interval upwards (or
// downwards), the whole ray up to the tightest guard along the cycle is
// added at once.

#ifndef COCA_GUARDED_HPP
#define COCA_GUARDED_HPP

#include "coca/interval.hpp"
#include "coca/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace coca {

/// Where a part of a successor set first came from.
struct PartOrigin {
  /// Producing transition; nullopt for parts inherited unchanged or seeded.
  std::optional<std::size_t> transition;
  std::size_t source_part = 0;
  std::size_t iteration = 0;
};

struct ReachMap {
  std::vector<IntervalSet> sets;
  /// Parallel to sets[q].parts(); may be empty when not tracked.
  std::vector<std::vector<PartOrigin>> origin;

  ReachMap() = default;
  explicit ReachMap(std::size_t n) : sets(n) {}

  const IntervalSet& operator[](StateId q) const { return sets.at(q); }
  std::size_t size() const { return sets.size(); }
  bool is_empty() const;
  /// Pointwise inclusion.
  bool leq(const ReachMap& other) const;
  std::size_t max_parts() const;
  std::string str(const StateTable& names) const;

  /// Compares the sets only.
  friend bool operator==(const ReachMap& a, const ReachMap& b) { return a.sets == b.sets; }
};

/// {p: [a,a]}, or the all-empty map when a is outside the guard of p.
ReachMap initial_map(const GuardedCoca& w, StateId p, const Rat& a);

/// One application of the successor operator. Parts not present in r are
/// given an origin stamped with `iteration`.
ReachMap succ(const GuardedCoca& w, const ReachMap& r, std::size_t iteration = 0);
ReachMap succ_pow(const GuardedCoca& w, const ReachMap& r0, std::size_t k);

enum class CycleSign { Positive, Negative };

struct ExpandingCycle {
  Run run;
  /// p_0(a_0) .. p_n(a_n).
  std::vector<Config> configs;
  /// I_0 .. I_n: the part of iterate i holding a_i.
  std::vector<Interval> parts;
  CycleSign sign = CycleSign::Positive;
  /// S_0 .. S_n, the iterates the cycle is relative to.
  std::vector<ReachMap> iterates;
};

struct CycleSearchResult {
  bool stabilized = false;
  /// The last iterate: the fixpoint when stabilized.
  ReachMap map;
  std::optional<ExpandingCycle> cycle;
};

/// Called with every map produced; `accelerated` tells Acc steps from Succ
/// steps.
using ReachObserver = std::function<void(const ReachMap& m, std::size_t step, bool accelerated)>;

/// Iterates the successor operator from s0 until it stabilizes or an
/// expanding cycle whose acceleration enlarges the current iterate shows up.
/// Throws BudgetExceeded after `budget` steps without either outcome.
CycleSearchResult find_expanding_cycle(const GuardedCoca& w, const ReachMap& s0, std::size_t budget,
                                       const ReachObserver& observer = {});

/// Re-checks the defining clauses of c against c.iterates (throws
/// InvalidCycle) and adds the accelerated interval to s. s must contain
/// c.iterates.front() and lie below the true reachability map.
ReachMap accelerate(const GuardedCoca& w, const ReachMap& s, const ExpandingCycle& c);

/// 4 |Q| * 4(|Q|+1) * (|T|+1).
std::size_t default_budget(const GuardedCoca& w);
/// 5 |Q| (2|Q|+2) + |Q|.
std::size_t acceleration_bound(const GuardedCoca& w);

struct ReachOptions {
  std::optional<std::size_t> budget;
  ReachObserver observer;
};

/// Reachable values per state. Throws SafeguardTripped if more
/// accelerations than acceleration_bound(w) are needed.
ReachMap compute_reach(const GuardedCoca& w, StateId p, const Rat& a, const ReachOptions& opts = {});
bool greach(const GuardedCoca& w, StateId p, const Rat& a, StateId q, const Rat& b);

}  // namespace coca

#endif  // COCA_GUARDED_HPP
