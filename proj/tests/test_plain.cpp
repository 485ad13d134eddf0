#include "coca/error.hpp"
#include "coca/guarded.hpp"
#include "coca/plain.hpp"
#include "oracle_support.hpp"

#include <doctest.h>

using namespace coca;

namespace {

Coca chain(const Interval& tau, std::initializer_list<std::tuple<const char*, int, const char*>> edges) {
  Coca v;
  v.tau = tau;
  for (const auto& [s, z, d] : edges) {
    for (const char* n : {s, d}) {
      if (!v.states.find(n)) v.add_state(n);
    }
    v.add_transition(v.states.id(s), z, v.states.id(d));
  }
  return v;
}

// p -(+2)-> q, q -(-3)-> q under [0,10].
Coca up_then_loop() { return chain(Interval::closed(0, 10), {{"p", 2, "q"}, {"q", -3, "q"}}); }

Coca single_edge(const Interval& tau, int z) { return chain(tau, {{"p", z, "q"}}); }

Coca example_plain_graph() {
  const auto w = testing_ref::example_automaton();
  Coca v;
  v.states = w.states;
  v.tau = Interval::everything();
  v.transitions = w.transitions;
  return v;
}

}  // namespace

TEST_CASE("path conditions") {
  PathConditions bad;
  bad.dplus_nonzero = bad.dplus_zero = true;
  CHECK_THROWS_AS(bad.validate(), Error);

  const auto e = single_edge(Interval::everything(), 2);
  const auto g = Graph::of(e);
  PathConditions c;
  c.dplus_nonzero = true;
  CHECK(cond_paths_exist(g, 0, 1, c));
  c = {};
  c.dplus_zero = true;
  CHECK_FALSE(cond_paths_exist(g, 0, 1, c));
  // The empty path satisfies zero conditions only.
  CHECK(cond_paths_exist(g, 0, 0, c));
  CHECK(cond_paths_opt(g, 0, 1, {}, Opt::Max, Weight::Plus) == Ext(2));
  CHECK(cond_paths_opt(g, 1, 0, {}, Opt::Max, Weight::Plus) == Ext::neg_inf());
  CHECK(cond_paths_opt(g, 1, 0, {}, Opt::Min, Weight::Minus) == Ext::pos_inf());

  const auto fig = example_plain_graph();
  const auto fg = Graph::of(fig);
  const auto p = fig.states.id("p"), q = fig.states.id("q");
  c = {};
  c.first_neg = true;
  CHECK_FALSE(cond_paths_exist(fg, p, q, c));
  c = {};
  c.first_pos = true;
  c.last_neg = true;
  CHECK(cond_paths_exist(fg, p, q, c));
}

TEST_CASE("bounded path optimum agrees with enumeration") {
  // Frozen from brute_path_opt: p,r,r,r,q collects 5+2+2 within four edges.
  const auto fig = example_plain_graph();
  const auto g = Graph::of(fig);
  const auto w = fig.as_guarded();
  const auto p = fig.states.id("p"), q = fig.states.id("q");
  CHECK(testing_ref::brute_path_opt(w, p, q, 4, true, true) == Ext(9));
  CHECK(cond_paths_opt(g, p, q, {}, Opt::Max, Weight::Plus) == Ext(9));
  CHECK(cond_paths_opt(g, p, q, {}, Opt::Min, Weight::Minus) == Ext(-5));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto v = testing_ref::random_plain(rng, {});
    const auto gw = v.as_guarded();
    const auto gg = Graph::of(v);
    for (StateId a = 0; a < v.num_states(); ++a) {
      for (StateId b = 0; b < v.num_states(); ++b) {
        for (std::size_t len : {std::size_t{0}, std::size_t{2}, v.num_states()}) {
          CHECK(cond_paths_opt(gg, a, b, {}, Opt::Max, Weight::Plus, len) ==
                testing_ref::brute_path_opt(gw, a, b, len, true, true));
          CHECK(cond_paths_opt(gg, a, b, {}, Opt::Min, Weight::Minus, len) ==
                testing_ref::brute_path_opt(gw, a, b, len, false, false));
          CHECK(cond_paths_opt(gg, a, b, {}, Opt::Min, Weight::Plus, len) ==
                testing_ref::brute_path_opt(gw, a, b, len, false, true));
        }
      }
    }
  }
}

TEST_CASE("enabledness and admissible cycles") {
  CHECK(enab_test(single_edge(Interval::closed(0, 3), 5), 0, 0, 1));
  CHECK_FALSE(enab_test(single_edge(Interval::closed(0, 0), 5), 0, 0, 1));
  CHECK_FALSE(enab_test(single_edge(Interval::closed(0, 3), 5), 4, 0, 1));

  const auto v = up_then_loop();
  CHECK(admissible_cycle(v, 0, 0, 1, Sign::Negative));
  CHECK_FALSE(admissible_cycle(v, 0, 0, 1, Sign::Positive));
  const auto acyclic = single_edge(Interval::closed(0, 3), 5);
  CHECK_FALSE(admissible_cycle(acyclic, 0, 0, 1, Sign::Negative));
  CHECK_FALSE(admissible_cycle(acyclic, 0, 0, 1, Sign::Positive));
}

TEST_CASE("closure endpoints and membership") {
  const auto v = up_then_loop();
  const auto ep = closure_endpoints(v, 0, 0, 1);
  CHECK(ep.lo == Ext(0));
  CHECK(ep.hi == Ext(2));
  CHECK(a_in_post(v, 0, 0, 1));
  const auto at = endpoint_membership(v, 0, 0, 1);
  CHECK(at.lo);
  CHECK(at.hi);

  const auto e = single_edge(Interval::closed(0, 3), 5);
  const auto ee = closure_endpoints(e, 0, 0, 1);
  CHECK(ee.lo == Ext(0));
  CHECK(ee.hi == Ext(3));
  CHECK_FALSE(a_in_post(e, 0, 0, 1));
  const auto ea = endpoint_membership(e, 0, 0, 1);
  CHECK_FALSE(ea.lo);
  CHECK(ea.hi);

  const auto none = closure_endpoints(e, 4, 0, 1);
  CHECK(none.lo == Ext::pos_inf());
  CHECK(none.hi == Ext::neg_inf());
  const auto na = endpoint_membership(e, 4, 0, 1);
  CHECK_FALSE(na.lo);
  CHECK_FALSE(na.hi);

  const auto loop = chain(Interval::everything(), {{"p", 1, "p"}, {"p", 0, "q"}});
  CHECK(closure_endpoints(loop, 0, 0, 1).hi == Ext::pos_inf());

  CHECK(a_in_post(chain(Interval::closed(0, 3), {{"p", 0, "q"}}), 2, 0, 1));
}

TEST_CASE("post representation") {
  const auto v = up_then_loop();
  const auto r = post_repr(v, 0, 0, 1);
  CHECK(r.closure == Interval::closed(0, 2));
  CHECK(r.excluded.empty());
  CHECK(r.str() == "[0,2]");

  const auto e = single_edge(Interval::closed(0, 3), 5);
  const auto re = post_repr(e, 0, 0, 1);
  CHECK(re.closure == Interval::closed(0, 3));
  CHECK(re.excluded == std::vector<Rat>{0});
  CHECK(re.as_set() == IntervalSet::parse("{(0,3]}"));
  CHECK(re.str() == "[0,3] minus {0}");
  CHECK_FALSE(reach(e, 0, 0, 1, 4));
  CHECK(reach(e, 0, 0, 1, 3));
  CHECK_FALSE(reach(e, 0, 0, 1, 0));

  // Running example with every guard widened to the whole line.
  const auto fig = example_plain_graph();
  const auto p = fig.states.id("p"), q = fig.states.id("q");
  CHECK(post_repr(fig, 15, p, q).as_set() == IntervalSet::parse("{(10,+inf)}"));
}

TEST_CASE("post representation matches the guarded fixpoint") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto v = testing_ref::random_plain(rng, {});
    if (v.tau.is_empty()) continue;
    const auto w = v.as_guarded();
    for (int k = 0; k < 3; ++k) {
      const Rat a = representative(v.tau, k % 2 == 0);
      const StateId p = rng() % v.num_states();
      const auto fix = compute_reach(w, p, a);
      for (StateId q = 0; q < v.num_states(); ++q) {
        const auto r = post_repr(v, a, p, q);
        INFO("model " << i << " from " << a << " to " << q);
        CHECK(fix[q] == r.as_set());
        CHECK(r.excluded.size() <= 3);
      }
    }
  }
}

TEST_CASE("equality tests") {
  EqCoca v;
  v.base = chain(Interval::closed(0, 5), {{"p", 1, "r"}, {"r", 1, "q"}});
  v.phi = {std::nullopt, Rat(1), std::nullopt};
  const auto p = v.base.states.id("p"), q = v.base.states.id("q");
  CHECK(eq_reach(v, p, 0, q, 2));
  CHECK(eq_reach(v, p, 0, q, Rat(3, 2)));
  CHECK_FALSE(eq_reach(v, p, 0, q, 1));
  CHECK_FALSE(eq_reach(v, p, 0, q, Rat(5, 2)));

  // Tested value outside the guard: the detour through r is unusable.
  EqCoca w;
  w.base = chain(Interval::closed(0, 5), {{"p", 1, "r"}, {"r", 1, "q"}, {"p", 2, "q"}});
  w.phi = {std::nullopt, Rat(7), std::nullopt};
  CHECK(eq_reach(w, 0, 0, 2, 2));
  CHECK(eq_reach(w, 0, 0, 2, 1));
  CHECK_FALSE(eq_reach(w, 0, 0, 2, 3));

  EqCoca x = v;
  x.phi = {Rat(1), std::nullopt, std::nullopt};
  CHECK_FALSE(eq_reach(x, p, 0, q, 2));
}
