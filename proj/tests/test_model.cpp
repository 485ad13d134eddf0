#include "coca/error.hpp"
#include "coca/model.hpp"
#include "coca/model_json.hpp"
#include "oracle_support.hpp"

#include <doctest.h>

using namespace coca;

namespace {

// Transition indices of the example automaton.
constexpr std::size_t kPR = 0, kRR = 1, kRQ = 2;

std::vector<Rat> values(const Trace& t) {
  std::vector<Rat> v;
  for (const auto& c : t.configs) v.push_back(c.value);
  return v;
}

}  // namespace

TEST_CASE("run_trace evaluates configurations") {
  const auto w = testing_ref::example_automaton();
  Run run{0, 15, {{1, kPR}, {Rat(1, 2), kRR}, {1, kRQ}}};
  const auto t = run_trace(w, run);
  CHECK(values(t) == std::vector<Rat>{15, 20, 21, 20});
  CHECK(t.admissible);
  CHECK(t.configs.back().state == w.states.id("q"));
  CHECK(run_effect(w, run) == Rat(5));

  CHECK(run_trace(w, Run{0, 15, {}}).admissible);
  CHECK_FALSE(run_trace(w, Run{0, 16, {}}).admissible);

  const auto bad = run_trace(w, Run{0, 15, {{Rat(1, 2), kPR}}});
  CHECK(values(bad).back() == Rat(35, 2));
  CHECK_FALSE(bad.admissible);
}

TEST_CASE("run_trace rejects broken chains") {
  const auto w = testing_ref::example_automaton();
  CHECK_THROWS_AS(run_trace(w, Run{0, 15, {{1, kRR}}}), BrokenChain);
  CHECK_THROWS_AS(run_trace(w, Run{0, 15, {{0, kPR}}}), BrokenChain);
  CHECK_THROWS_AS(run_trace(w, Run{0, 15, {{Rat(3, 2), kPR}}}), BrokenChain);
  CHECK_THROWS_AS(run_trace(w, Run{0, 15, {{1, 99}}}), BrokenChain);
}

TEST_CASE("run_scale") {
  Run run{0, 15, {{1, kPR}, {Rat(1, 2), kRR}, {1, kRQ}}};
  CHECK(run_scale(run, 1) == run);
  const auto half = run_scale(run, Rat(1, 2));
  CHECK(half.steps[0].alpha == Rat(1, 2));
  CHECK(half.steps[1].alpha == Rat(1, 4));
  CHECK(half.steps[2].alpha == Rat(1, 2));
  const auto w = testing_ref::example_automaton();
  CHECK(run_effect(w, half) == run_effect(w, run) / Rat(2));
  CHECK_THROWS_AS(run_scale(run, 0), BrokenChain);
  CHECK_THROWS_AS(run_scale(run, 2), BrokenChain);
}

TEST_CASE("instantiate substitutes parameters") {
  ParametricCoca p;
  p.params = {"x1", "y"};
  const auto a = p.add_state("a", ParamInterval::parse("[x1,x1]"));
  const auto b = p.add_state("b", ParamInterval::parse("(-inf,+inf)"));
  p.add_transition(a, std::string("y"), b);
  p.add_transition(b, Rat(-1), a);
  p.validate();
  const auto w = instantiate(p, {{"x1", 1}, {"y", Rat(3, 2)}});
  CHECK(w.tau[a] == Interval::point(1));
  CHECK(w.transitions[0].update == Rat(3, 2));
  CHECK(w.transitions[1].update == Rat(-1));
  CHECK_THROWS_AS(instantiate(p, {{"x1", 1}}), ModelError);

  const auto g = testing_ref::example_automaton();
  CHECK(instantiate(ParametricCoca::from_guarded(g), {}) == g);
}

TEST_CASE("parametric guard text") {
  CHECK(ParamInterval::parse("[x,x]").str() == "[x,x]");
  CHECK(ParamInterval::parse("(0,y]").str() == "(0,y]");
  CHECK(ParamInterval::parse("[1,4)").is_constant());
  CHECK_THROWS_AS(ParamInterval::parse("[-inf,y]"), ParseError);
  CHECK_THROWS_AS(ParamInterval::parse("[x y]"), ParseError);
}

TEST_CASE("JSON documents round-trip") {
  const char* doc = R"J({"type":"guarded","states":[{"id":"p","guard":"[-5,15]"},{"id":"r","guard":"[20,100]"},
    {"id":"r'","guard":"(-inf,+inf)"},{"id":"q","guard":"(-inf,+inf)"}],
    "transitions":[{"src":"p","update":"5","dst":"r"},{"src":"r","update":"2","dst":"r"},
    {"src":"r","update":"-1","dst":"q"},{"src":"p","update":"3","dst":"r'"},{"src":"r'","update":"-5","dst":"q"}]})J";
  const auto m = parse_model(doc);
  CHECK(std::get<GuardedCoca>(m) == testing_ref::example_automaton());
  CHECK(parse_model(serialize_model(m)) == m);

  const char* eq = R"J({"type":"eq","states":[{"id":"p"},{"id":"r"},{"id":"q"}],"global_guard":"[0,5]",
    "transitions":[{"src":"p","update":1,"dst":"r"},{"src":"r","update":"1","dst":"q"}],"eq_tests":{"r":"1"}})J";
  const auto e = parse_model(eq);
  CHECK(std::get<EqCoca>(e).phi[1] == Rat(1));
  CHECK(parse_model(serialize_model(e)) == e);

  const char* par = R"J({"type":"parametric","params":["x"],"states":[{"id":"p","guard":"[0,x]"},
    {"id":"q","guard":"(-inf,+inf)"}],"transitions":[{"src":"p","update":"x","dst":"q"},{"src":"q","update":"1/2","dst":"p"}]})J";
  const auto pm = parse_model(par);
  CHECK(parse_model(serialize_model(pm)) == pm);
  CHECK(std::get<ParametricCoca>(pm).transitions[1].update == ParamUpdate(Rat(1, 2)));

  const char* plain = R"J({"type":"coca","states":[{"id":"p"}],"global_guard":"[0,1]","transitions":[]})J";
  const auto pl = parse_model(plain);
  CHECK(parse_model(serialize_model(pl)) == pl);
  CHECK(as_guarded(pl).tau[0] == Interval::closed(0, 1));
}

TEST_CASE("JSON documents are validated") {
  CHECK_THROWS_AS(parse_model(R"J({"type":"guarded","states":[]})J"), ModelError);
  CHECK_THROWS_AS(parse_model(R"J({"type":"parametric","params":[],"states":[{"id":"p","guard":"[0,x]"}]})J"),
                  ModelError);
  CHECK_THROWS_AS(parse_model(R"J({"type":"parametric","params":["x"],"states":[{"id":"p","guard":"[0,1]"}],
    "transitions":[{"src":"p","update":"z","dst":"p"}]})J"),
                  ModelError);
  CHECK_THROWS_AS(parse_model(R"J({"type":"guarded","states":[{"id":"p","guard":"[0,1]"}],
    "transitions":[{"src":"p","update":"1","dst":"q"}]})J"),
                  ModelError);
  CHECK_THROWS_AS(parse_model(R"J({"type":"guarded","states":[{"id":"p"}]})J"), ParseError);
  CHECK_THROWS_AS(parse_model(R"J({"type":"guarded", "states": [)J"), ParseError);
  CHECK_THROWS_AS(parse_model(R"J({"type":"eq","states":[{"id":"p"}],"global_guard":"[0,1]","eq_tests":{"p":"1/2"}})J"),
                  ModelError);
  CHECK_THROWS_AS(parse_model(R"J({"type":"guarded","states":[{"id":"p","guard":"[0,1]","colour":"red"}]})J"),
                  ParseError);
  CHECK_THROWS_AS(parse_model(R"J({"type":"guarded","states":[{"id":"p","guard":"[0,1]"},{"id":"p","guard":"[0,1]"}]})J"),
                  ModelError);
}

TEST_CASE("scaling needs a single guard") {
  // With per-state guards a scaled run can miss a point guard.
  GuardedCoca w;
  const auto p = w.add_state("p", Interval::point(0));
  const auto q = w.add_state("q", Interval::point(1));
  w.add_transition(p, 1, q);
  const Run run{p, 0, {{1, 0}}};
  CHECK(run_trace(w, run).admissible);
  CHECK_FALSE(run_trace(w, run_scale(run, Rat(1, 2))).admissible);
}

TEST_CASE("scaled admissible runs stay admissible") {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int round = 0; round < 400; ++round) {
    const auto w = testing_ref::random_plain(rng, {}).as_guarded();
    if (w.transitions.empty()) continue;
    std::uniform_int_distribution<int> st(0, static_cast<int>(w.num_states()) - 1);
    const StateId p = static_cast<StateId>(st(rng));
    const Rat a = representative(w.tau[p]);
    Run run{p, a, {}};
    StateId cur = p;
    for (int k = 0; k < 6; ++k) {
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < w.transitions.size(); ++i) {
        if (w.transitions[i].src == cur) out.push_back(i);
      }
      if (out.empty()) break;
      const auto ti = out[rng() % out.size()];
      run.steps.push_back({Rat(static_cast<long>(rng() % 8) + 1, 8), ti});
      if (!run_trace(w, run).admissible) {
        run.steps.pop_back();
        break;
      }
      cur = w.transitions[ti].dst;
    }
    REQUIRE(run_trace(w, run).admissible);
    const Rat beta(static_cast<long>(rng() % 16) + 1, 16);
    const auto scaled = run_scale(run, beta);
    CHECK(run_trace(w, scaled).admissible);
    CHECK(run_effect(w, scaled) == beta * run_effect(w, run));
    ++checked;
  }
  CHECK(checked > 100);
}
