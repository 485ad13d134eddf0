#include "coca/error.hpp"
#include "coca/gadgets.hpp"
#include "coca/guarded.hpp"
#include "coca/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace coca;

namespace {

bool gadget_reachable(const Cnf& cnf, GadgetVariant v) {
  const auto g = gen_sat_gadget(cnf, v);
  return valuation_grid_check(g.automaton, binary_grid(g.automaton.params), g.from, 0, g.to, 0).reachable;
}

Cnf random_cnf(std::mt19937_64& rng, int vars, int clauses) {
  Cnf c{vars, {}};
  for (int j = 0; j < clauses; ++j) {
    std::vector<int> cl;
    for (auto k = 1 + rng() % 3; k > 0; --k) {
      const int x = 1 + static_cast<int>(rng() % static_cast<unsigned>(vars));
      cl.push_back(rng() % 2 ? x : -x);
    }
    c.clauses.push_back(cl);
  }
  return c;
}

}  // namespace

TEST_CASE("DIMACS input") {
  const auto c = Cnf::parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n");
  CHECK(c.num_vars == 3);
  CHECK(c.clauses == std::vector<std::vector<int>>{{1, -2}, {2, 3, -1}});
  CHECK(Cnf::parse_dimacs(c.dimacs()).clauses == c.clauses);
  CHECK(c.satisfied_by({true, true, false}));
  CHECK_FALSE(c.satisfied_by({true, false, false}));

  CHECK_THROWS_AS(Cnf::parse_dimacs("p cnf 2 1\n0\n"), EmptyClause);
  CHECK_THROWS_AS(Cnf::parse_dimacs("1 2 0\n"), ParseError);
  CHECK_THROWS_AS(Cnf::parse_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(Cnf::parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
  CHECK_THROWS_AS(Cnf::parse_dimacs("p cnf 2 1\n1 3 0\n"), ModelError);
  CHECK_THROWS_AS(gen_sat_gadget(Cnf{1, {{}}}, GadgetVariant::Guards), EmptyClause);
}

TEST_CASE("gadget examples") {
  for (const auto v : {GadgetVariant::Guards, GadgetVariant::Updates}) {
    CAPTURE(static_cast<int>(v));
    const Cnf unit{1, {{1}}};
    const auto g = gen_sat_gadget(unit, v);
    CHECK(g.automaton.params == std::vector<std::string>{"x1"});
    CHECK(greach(instantiate(g.automaton, {{"x1", 1}}), g.from, 0, g.to, 0));
    CHECK_FALSE(greach(instantiate(g.automaton, {{"x1", 0}}), g.from, 0, g.to, 0));

    CHECK_FALSE(gadget_reachable(Cnf{1, {{1}, {-1}}}, v));

    // All-zero valuation passes through the negative literal's branch.
    const auto h = gen_sat_gadget(Cnf{4, {{1, 2, -4}}}, v);
    const Valuation zero{{"x1", 0}, {"x2", 0}, {"x3", 0}, {"x4", 0}};
    CHECK(greach(instantiate(h.automaton, zero), h.from, 0, h.to, 0));

    const auto empty = gen_sat_gadget(Cnf{}, v);
    CHECK(empty.from == empty.to);
  }
}

TEST_CASE("gadget reachability matches satisfiability") {
  std::mt19937_64 rng(8);
  int sat = 0;
  for (int i = 0; i < 40; ++i) {
    const auto cnf = random_cnf(rng, 1 + i % 3, 1 + (i / 3) % 3);
    const bool expected = brute_sat(cnf);
    sat += expected ? 1 : 0;
    CHECK(gadget_reachable(cnf, GadgetVariant::Guards) == expected);
    CHECK(gadget_reachable(cnf, GadgetVariant::Updates) == expected);
  }
  CHECK(sat > 5);
  CHECK(sat < 40);
}

TEST_CASE("non-binary values do not open extra paths") {
  // x1 = 1/2 or 2 satisfies nothing in the guards variant; in the updates
  // variant values of at least 1 act as true.
  const Cnf c{1, {{1}}};
  const auto g = gen_sat_gadget(c, GadgetVariant::Guards);
  for (const Rat v : {Rat(1, 2), Rat(2), Rat(-1)}) CHECK_FALSE(greach(instantiate(g.automaton, {{"x1", v}}), g.from, 0, g.to, 0));
  const auto u = gen_sat_gadget(c, GadgetVariant::Updates);
  CHECK_FALSE(greach(instantiate(u.automaton, {{"x1", Rat(1, 2)}}), u.from, 0, u.to, 0));
  CHECK_FALSE(greach(instantiate(u.automaton, {{"x1", Rat(-1)}}), u.from, 0, u.to, 0));
  CHECK(greach(instantiate(u.automaton, {{"x1", Rat(2)}}), u.from, 0, u.to, 0));
}

TEST_CASE("integer rescaling") {
  const Valuation mu{{"x", Rat(3, 2)}, {"y", Rat(1, 3)}};
  CHECK(rescale_factor(mu) == Rat(6));
  ParametricCoca p;
  p.params = {"x", "y"};
  p.add_state("p", ParamInterval::constant(Interval::everything()));
  const auto scaled = rescale_to_integer(mu, p);
  CHECK(scaled.at("x") == Rat(9));
  CHECK(scaled.at("y") == Rat(2));
  const Valuation ints{{"x", Rat(4)}, {"y", Rat(-2)}};
  CHECK(rescale_factor(ints) == Rat(1));
  CHECK(rescale_to_integer(ints, p) == ints);

  const auto guards = gen_sat_gadget(Cnf{1, {{1}}}, GadgetVariant::Guards);
  CHECK_THROWS_AS(rescale_to_integer({{"x1", 1}}, guards.automaton), ParametricGuardPresent);
}
