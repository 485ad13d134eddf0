#include "coca/error.hpp"
#include "coca/guarded.hpp"
#include "oracle_support.hpp"

#include <doctest.h>

using namespace coca;

namespace {

GuardedCoca self_loop(const Interval& guard, int z) {
  GuardedCoca w;
  w.add_state("p", guard);
  w.add_transition(0, z, 0);
  return w;
}

}  // namespace

TEST_CASE("one successor step on the running example") {
  const auto w = testing_ref::example_automaton();
  const auto p = w.states.id("p"), r = w.states.id("r"), rr = w.states.id("r'"), q = w.states.id("q");
  const auto s0 = initial_map(w, p, 15);
  const auto s1 = succ(w, s0, 1);
  CHECK(s1[p] == IntervalSet::parse("{[15,15]}"));
  CHECK(s1[r] == IntervalSet::parse("{[20,20]}"));
  CHECK(s1[rr] == IntervalSet::parse("{(15,18]}"));
  CHECK(s1[q].is_empty());
  CHECK(s0.leq(s1));
  CHECK(succ_pow(w, s0, 0) == s0);
  CHECK(succ(w, ReachMap(w.num_states())).is_empty());

  // (15,18] - (0,5] and 20 - (0,1].
  const auto s2 = succ_pow(w, s0, 2);
  CHECK(s2[q] == IntervalSet::parse("{(10,18), [19,20)}"));
  CHECK(s2[r] == IntervalSet::parse("{[20,22]}"));

  GuardedCoca still;
  still.add_state("p", Interval::closed(0, 1));
  CHECK(succ(still, initial_map(still, 0, 1)) == initial_map(still, 0, 1));
}

TEST_CASE("reachability on the running example") {
  const auto w = testing_ref::example_automaton();
  const auto p = w.states.id("p"), q = w.states.id("q");
  CHECK(compute_reach(w, p, 15)[q] == IntervalSet::parse("{(10,18), [19,100)}"));
  for (int a : {-5, 0, 14}) {
    CHECK(compute_reach(w, p, a)[q] == IntervalSet(Interval::open(a - 5, a + 3)));
  }
  CHECK(compute_reach(w, p, Rat(29, 2))[q] == IntervalSet(Interval::open(Rat(19, 2), Rat(35, 2))));
  CHECK(compute_reach(w, p, 20).is_empty());
  CHECK(greach(w, p, 15, q, 19));
  CHECK_FALSE(greach(w, p, 15, q, 18));
}

TEST_CASE("self-loop is accelerated") {
  const auto w = self_loop(Interval::closed(0, 100), 1);
  const auto s0 = initial_map(w, 0, 0);
  const auto found = find_expanding_cycle(w, s0, default_budget(w));
  REQUIRE_FALSE(found.stabilized);
  REQUIRE(found.cycle);
  const auto& c = *found.cycle;
  CHECK(c.sign == CycleSign::Positive);
  CHECK(c.configs.front().state == c.configs.back().state);
  CHECK(c.configs.back().value > c.configs.front().value);
  const auto acc = accelerate(w, found.map, c);
  CHECK(acc[0] == IntervalSet::parse("{[0,100]}"));
  CHECK(compute_reach(w, 0, 0)[0] == IntervalSet::parse("{[0,100]}"));

  CHECK(compute_reach(self_loop(Interval::parse("[0,+inf)"), 1), 0, 3)[0] == IntervalSet::parse("{[3,+inf)}"));
  CHECK(compute_reach(self_loop(Interval::closed(-100, 0), -2), 0, 0)[0] == IntervalSet::parse("{[-100,0]}"));
}

TEST_CASE("tampered cycles are rejected") {
  const auto w = self_loop(Interval::closed(0, 100), 1);
  const auto found = find_expanding_cycle(w, initial_map(w, 0, 0), default_budget(w));
  REQUIRE(found.cycle);
  auto c = *found.cycle;
  c.sign = CycleSign::Negative;
  CHECK_THROWS_AS(accelerate(w, found.map, c), InvalidCycle);
  c = *found.cycle;
  c.configs.back().value += 1000;
  CHECK_THROWS_AS(accelerate(w, found.map, c), InvalidCycle);
}

TEST_CASE("fixpoints stabilise without acceleration when nothing loops") {
  GuardedCoca w;
  w.add_state("a", Interval::closed(0, 10));
  w.add_state("b", Interval::closed(0, 10));
  w.add_state("c", Interval::closed(0, 10));
  w.add_transition(0, 3, 1);
  w.add_transition(1, -1, 2);
  std::size_t accels = 0, steps = 0;
  ReachOptions opts;
  opts.observer = [&](const ReachMap&, std::size_t, bool acc) { acc ? ++accels : ++steps; };
  const auto r = compute_reach(w, 0, 1, opts);
  CHECK(accels == 0);
  CHECK(steps <= w.num_states() + 1);
  CHECK(r[2] == IntervalSet::parse("{(0,4)}"));

  GuardedCoca z;
  z.add_state("a", Interval::closed(0, 10));
  z.add_state("b", Interval::closed(0, 10));
  z.add_transition(0, 0, 1);
  z.add_transition(1, 0, 0);
  const auto found = find_expanding_cycle(z, succ(z, initial_map(z, 0, 5)), 10);
  CHECK(found.stabilized);
}

TEST_CASE("small budgets are reported") {
  GuardedCoca w;
  w.add_state("a", Interval::closed(0, 100));
  w.add_state("b", Interval::closed(0, 100));
  w.add_transition(0, 1, 1);
  w.add_transition(1, 1, 0);
  ReachOptions opts;
  opts.budget = 1;
  CHECK_THROWS_AS(compute_reach(w, 0, 0, opts), BudgetExceeded);
  CHECK(compute_reach(w, 0, 0)[1] == IntervalSet::parse("{(0,100]}"));
}

TEST_CASE("fixpoint properties on random automata") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 400; ++i) {
    const auto w = testing_ref::random_guarded(rng, {});
    const StateId p = rng() % w.num_states();
    if (w.tau[p].is_empty()) continue;
    const Rat a = representative(w.tau[p], i % 2 == 0);
    std::size_t worst = 0;
    ReachOptions opts;
    opts.observer = [&](const ReachMap& m, std::size_t, bool) { worst = std::max(worst, m.max_parts()); };
    ReachMap fix;
    REQUIRE_NOTHROW(fix = compute_reach(w, p, a, opts));
    INFO("model " << i);
    CHECK(succ(w, fix) == fix);
    CHECK(is_contains(fix[p], a));
    CHECK(worst <= 4 * (w.num_states() + 1));
    CHECK(succ_pow(w, initial_map(w, p, a), 6).leq(fix));
    // Sampled runs stay inside the fixpoint.
    for (int t = 0; t < 30; ++t) {
      std::vector<std::pair<Rat, std::size_t>> steps;
      StateId cur = p;
      for (int len = 0; len < 8; ++len) {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < w.transitions.size(); ++k) {
          if (w.transitions[k].src == cur) out.push_back(k);
        }
        if (out.empty()) break;
        const auto k = out[rng() % out.size()];
        steps.emplace_back(Rat(static_cast<long>(rng() % 4 + 1), 4), k);
        cur = w.transitions[k].dst;
      }
      while (!steps.empty()) {
        if (const auto v = testing_ref::run_value(w, p, a, steps)) {
          CHECK(is_contains(fix[w.transitions[steps.back().second].dst], *v));
          break;
        }
        steps.pop_back();
      }
    }
  }
}
