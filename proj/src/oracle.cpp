#include "coca/oracle.hpp"

#include <algorithm>
#include <random>

namespace coca {

namespace {

void extend(const GuardedCoca& w, StateId q, const Interval& image, std::vector<std::size_t>& path, std::size_t k,
            std::vector<PathImage>& out) {
  out.push_back({path, image});
  if (path.size() == k) return;
  for (std::size_t i = 0; i < w.transitions.size(); ++i) {
    const auto& t = w.transitions[i];
    if (t.src != q) continue;
    const auto next = iv_intersect(iv_minkowski_update(image, t.update), w.tau[t.dst]);
    if (next.is_empty()) continue;
    path.push_back(i);
    extend(w, t.dst, next, path, k, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<PathImage> path_images(const GuardedCoca& w, StateId p, const Rat& a, std::size_t k) {
  std::vector<PathImage> out;
  const auto start = iv_intersect(Interval::point(a), w.tau.at(p));
  if (start.is_empty()) return out;
  std::vector<std::size_t> path;
  extend(w, p, start, path, k, out);
  return out;
}

ReachMap enum_post_bounded(const GuardedCoca& w, StateId p, const Rat& a, std::size_t k) {
  // Level by level over distinct (state, image) pairs: two paths ending in
  // the same state with the same image have the same extensions, so the
  // frontier stays small where the path count would explode.
  std::vector<std::vector<Interval>> parts(w.num_states());
  std::vector<std::pair<StateId, Interval>> frontier;
  const auto start = iv_intersect(Interval::point(a), w.tau.at(p));
  if (!start.is_empty()) frontier.emplace_back(p, start);
  for (std::size_t level = 0; !frontier.empty(); ++level) {
    for (const auto& [q, iv] : frontier) parts[q].push_back(iv);
    if (level == k) break;
    std::vector<std::pair<StateId, Interval>> next;
    for (const auto& [q, iv] : frontier) {
      for (const auto& t : w.transitions) {
        if (t.src != q) continue;
        auto image = iv_intersect(iv_minkowski_update(iv, t.update), w.tau[t.dst]);
        if (image.is_empty()) continue;
        std::pair<StateId, Interval> item{t.dst, std::move(image)};
        if (std::find(next.begin(), next.end(), item) == next.end()) next.push_back(std::move(item));
      }
    }
    frontier = std::move(next);
  }
  ReachMap r(w.num_states());
  for (StateId q = 0; q < w.num_states(); ++q) r.sets[q] = IntervalSet::from_parts(std::move(parts[q]));
  return r;
}

std::vector<Config> sample_runs(const GuardedCoca& w, StateId p, const Rat& a, std::size_t trials, std::size_t maxlen,
                                std::uint64_t seed) {
  std::vector<Config> out;
  if (trials == 0 || !w.tau.at(p).contains(a)) return out;
  std::mt19937_64 rng(seed);
  out.push_back({p, a});
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Config cur{p, a};
    for (std::size_t step = 0; step < maxlen; ++step) {
      std::vector<std::size_t> outgoing;
      for (std::size_t i = 0; i < w.transitions.size(); ++i) {
        if (w.transitions[i].src == cur.state) outgoing.push_back(i);
      }
      if (outgoing.empty()) break;
      const auto& t = w.transitions[outgoing[std::uniform_int_distribution<std::size_t>(0, outgoing.size() - 1)(rng)]];
      const Rat alpha(std::uniform_int_distribution<long>(1, 8)(rng), 8);
      const Config next{t.dst, cur.value + alpha * t.update};
      if (!w.tau[next.state].contains(next.value)) break;
      out.push_back(next);
      cur = next;
    }
  }
  return out;
}

std::optional<std::vector<bool>> brute_sat_witness(const Cnf& cnf) {
  const auto n = static_cast<std::size_t>(cnf.num_vars);
  std::vector<bool> assignment(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) assignment[i] = (mask >> i) & 1U;
    if (cnf.satisfied_by(assignment)) return assignment;
  }
  return std::nullopt;
}

bool brute_sat(const Cnf& cnf) { return brute_sat_witness(cnf).has_value(); }

GridResult valuation_grid_check(const ParametricCoca& p, const std::vector<Valuation>& grid, StateId from,
                                const Rat& a, StateId to, const Rat& b) {
  for (const auto& mu : grid) {
    if (greach(instantiate(p, mu), from, a, to, b)) return {true, mu};
  }
  return {false, std::nullopt};
}

std::vector<Valuation> binary_grid(const std::vector<std::string>& params) { return value_grid(params, {0, 1}); }

std::vector<Valuation> value_grid(const std::vector<std::string>& params, const std::vector<Rat>& values) {
  std::vector<Valuation> grid{{}};
  for (const auto& x : params) {
    std::vector<Valuation> next;
    for (const auto& mu : grid) {
      for (const auto& v : values) {
        auto nu = mu;
        nu[x] = v;
        next.push_back(std::move(nu));
      }
    }
    grid = std::move(next);
  }
  return grid;
}

}  // namespace coca
