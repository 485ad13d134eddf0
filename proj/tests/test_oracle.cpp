#include "coca/guarded.hpp"
#include "coca/oracle.hpp"
#include "oracle_support.hpp"

#include <doctest.h>

using namespace coca;

TEST_CASE("bounded path enumeration on the example") {
  const auto w = testing_ref::example_automaton();
  const auto p = w.states.id("p");
  const auto q = w.states.id("q");
  const auto e0 = enum_post_bounded(w, p, 15, 0);
  CHECK(e0[p] == IntervalSet::parse("{[15,15]}"));
  CHECK(e0[q].is_empty());
  CHECK(path_images(w, p, 15, 0).size() == 1);
  // Via r': (15,18] then (10,18); via r: {20} then [19,20).
  CHECK(enum_post_bounded(w, p, 15, 2)[q] == IntervalSet::parse("{(10,18), [19,20)}"));
  CHECK(enum_post_bounded(w, p, 20, 3).sets == ReachMap(w.num_states()).sets);
}

TEST_CASE("succ powers equal bounded enumeration") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    const auto w = testing_ref::random_guarded(rng, {});
    const StateId s = rng() % w.num_states();
    const Rat a(static_cast<long>(rng() % 9) - 4);
    for (std::size_t k = 1; k <= 5; ++k) {
      CHECK(succ_pow(w, initial_map(w, s, a), k).sets == enum_post_bounded(w, s, a, k).sets);
    }
  }
}

TEST_CASE("sampled runs stay inside the reachable map") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 60; ++i) {
    const auto w = testing_ref::random_guarded(rng, {});
    const StateId s = rng() % w.num_states();
    const Rat a(static_cast<long>(rng() % 9) - 4);
    const auto runs = sample_runs(w, s, a, 10, 8, 5);
    if (!w.tau[s].contains(a)) {
      CHECK(runs.empty());
      continue;
    }
    CHECK(runs == sample_runs(w, s, a, 10, 8, 5));
    const auto reach = compute_reach(w, s, a);
    for (const auto& c : runs) CHECK(is_contains(reach[c.state], c.value));
  }
}

TEST_CASE("truth tables and grids") {
  CHECK(brute_sat(Cnf{}));
  CHECK(brute_sat(Cnf{2, {{1, 2}, {-1}}}));
  CHECK(*brute_sat_witness(Cnf{2, {{1, 2}, {-1}}}) == std::vector<bool>{false, true});
  CHECK_FALSE(brute_sat(Cnf{1, {{1}, {-1}}}));

  CHECK(binary_grid({}).size() == 1);
  const auto g = binary_grid({"x", "y", "z"});
  CHECK(g.size() == 8);
  CHECK(g.front() == Valuation{{"x", 0}, {"y", 0}, {"z", 0}});
  CHECK(value_grid({"x"}, {Rat(1, 2), 3}).size() == 2);

  ParametricCoca p;
  p.params = {"x"};
  const auto src = p.add_state("p", ParamInterval::constant(Interval::everything()));
  const auto dst = p.add_state("q", ParamInterval::constant(Interval::closed(2, 2)));
  p.add_transition(src, std::string("x"), dst);
  const auto hit = valuation_grid_check(p, value_grid({"x"}, {1, 2, 3}), src, 0, dst, 2);
  CHECK(hit.reachable);
  CHECK(hit.witness->at("x") == Rat(2));
  CHECK_FALSE(valuation_grid_check(p, value_grid({"x"}, {-1, 1}), src, 0, dst, 2).reachable);
}
