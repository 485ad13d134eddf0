// Brute-force referees: explicit path enumeration, random run sampling,
// truth-table SAT and valuation grids. They share no bookkeeping with the
// fixpoint engine and serve as its test oracles.

#ifndef COCA_ORACLE_HPP
#define COCA_ORACLE_HPP

#include "coca/gadgets.hpp"
#include "coca/guarded.hpp"
#include "coca/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace coca {

struct PathImage {
  std::vector<std::size_t> path;
  Interval image;
};

/// Every path from p with at most k transitions whose image of [a,a] is
/// nonempty, the empty path included.
std::vector<PathImage> path_images(const GuardedCoca& w, StateId p, const Rat& a, std::size_t k);

/// Union of path_images grouped by final state, computed over a frontier
/// of distinct (state, image) pairs instead of individual paths.
ReachMap enum_post_bounded(const GuardedCoca& w, StateId p, const Rat& a, std::size_t k);

/// Random walks from p(a): transitions chosen uniformly among the enabled
/// source state's outgoing ones, scalars drawn from {1/8, ..., 8/8}. A walk
/// stops at the first inadmissible step. Returns every admissible
/// configuration visited, the start included. Deterministic in seed.
std::vector<Config> sample_runs(const GuardedCoca& w, StateId p, const Rat& a, std::size_t trials, std::size_t maxlen,
                                std::uint64_t seed);

bool brute_sat(const Cnf& cnf);
/// A satisfying assignment, if any, by truth table.
std::optional<std::vector<bool>> brute_sat_witness(const Cnf& cnf);

struct GridResult {
  bool reachable = false;
  std::optional<Valuation> witness;
};

/// Tries each valuation in turn with instantiate + compute_reach.
GridResult valuation_grid_check(const ParametricCoca& p, const std::vector<Valuation>& grid, StateId from,
                                const Rat& a, StateId to, const Rat& b);

/// {0,1}^params.
std::vector<Valuation> binary_grid(const std::vector<std::string>& params);
/// values^params.
std::vector<Valuation> value_grid(const std::vector<std::string>& params, const std::vector<Rat>& values);

}  // namespace coca

#endif  // COCA_ORACLE_HPP
