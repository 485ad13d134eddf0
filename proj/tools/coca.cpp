// coca: command-line front end.
//
// Exit codes: 0 on a completed query (unreachable included), 2 usage,
// 3 malformed or unsuitable model, 4 solver failure or unknown answer,
// 5 internal invariant violation or oracle mismatch.

#include "coca/encoding.hpp"
#include "coca/error.hpp"
#include "coca/gadgets.hpp"
#include "coca/guarded.hpp"
#include "coca/model_json.hpp"
#include "coca/oracle.hpp"
#include "coca/plain.hpp"
#include "coca/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace coca;
using nlohmann::json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct Query {
  std::string command;
  std::string file;
  std::string from;
  std::string to;
  std::string value;
  std::string target;
  bool json_out = false;
  bool trace = false;
  bool acyclic = false;
  std::string solver = "z3 -in";
  unsigned timeout = 30;
  std::uint64_t seed = 42;
  std::size_t depth = 6;
  std::size_t trials = 500;
  std::string variant = "guards";
  std::string cnf;
  std::string output;
  std::size_t width = 0;  // 0: the default width
};

Rat parse_rat(const std::string& flag, const std::string& text) {
  const auto r = Rat::try_parse(text);
  if (!r) throw UsageError("--" + flag + ": not a rational: '" + text + "'");
  return *r;
}

template <class T>
const T& expect(const Model& m, const char* kind) {
  if (const auto* v = std::get_if<T>(&m)) return *v;
  throw ModelError(std::string("this command needs a '") + kind + "' document");
}

ParametricCoca as_parametric(const Model& m) {
  if (const auto* p = std::get_if<ParametricCoca>(&m)) return *p;
  return ParametricCoca::from_guarded(as_guarded(m));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw UsageError("cannot write " + path);
}

json query_json(const Query& q) {
  json j{{"command", q.command}};
  for (const auto& [k, v] : {std::pair{"file", q.file}, {"from", q.from}, {"to", q.to}, {"value", q.value},
                             {"target", q.target}, {"cnf", q.cnf}}) {
    if (!v.empty()) j[k] = v;
  }
  return j;
}

void emit(const Query& q, const std::string& result, const json& repr, const std::string& text,
          const json& witness = nullptr) {
  if (q.json_out) {
    std::cout << json{{"query", query_json(q)}, {"result", result}, {"representation", repr}, {"witness", witness}}.dump()
              << '\n';
  } else {
    std::cout << text;
  }
}

const char* verdict(bool r) { return r ? "reachable" : "unreachable"; }

std::string parts_str(const ReachMap& m) {
  std::ostringstream os;
  for (std::size_t q = 0; q < m.size(); ++q) os << (q ? " " : "") << m[q].size();
  return os.str();
}

// One line per fixpoint step on stderr: step index, kind, changed states and
// part counts.
ReachObserver tracer(const GuardedCoca& w) {
  auto prev = std::make_shared<ReachMap>();
  return [&w, prev](const ReachMap& m, std::size_t step, bool accelerated) {
    std::cerr << "step " << step << (accelerated ? " acc" : " succ") << " changed:";
    for (StateId q = 0; q < m.size(); ++q) {
      if (prev->size() != m.size() || !(m[q] == (*prev)[q])) std::cerr << ' ' << w.states.name(q);
    }
    std::cerr << " parts: " << parts_str(m) << '\n';
    *prev = m;
  };
}

int run_reach(const Query& q, const Model& m) {
  const auto& v = expect<Coca>(m, "coca");
  const bool r = reach(v, v.states.id(q.from), parse_rat("value", q.value), v.states.id(q.to),
                       parse_rat("target", q.target));
  emit(q, verdict(r), nullptr, std::string(verdict(r)) + "\n");
  return 0;
}

int run_post(const Query& q, const Model& m) {
  const auto& v = expect<Coca>(m, "coca");
  const auto post = post_repr(v, parse_rat("value", q.value), v.states.id(q.from), v.states.id(q.to));
  json excluded = json::array();
  for (const auto& x : post.excluded) excluded.push_back(x.str());
  json repr{{"closure", post.closure.str()}, {"excluded", excluded}};
  std::string text = post.str() + "\n";
  std::string result = post.str();
  if (!q.target.empty()) {
    const bool r = post.contains(parse_rat("target", q.target));
    repr["reachable"] = r;
    result = verdict(r);
    text += std::string(verdict(r)) + "\n";
  }
  emit(q, result, repr, text);
  return 0;
}

ReachMap guarded_map(const Query& q, const GuardedCoca& w) {
  ReachOptions opts;
  if (q.trace) opts.observer = tracer(w);
  return compute_reach(w, w.states.id(q.from), parse_rat("value", q.value), opts);
}

int run_greach(const Query& q, const Model& m) {
  const auto w = as_guarded(m);
  const auto to = w.states.id(q.to);
  const auto b = parse_rat("target", q.target);
  const auto map = guarded_map(q, w);
  const bool r = is_contains(map[to], b);
  emit(q, verdict(r), json{{q.to, map[to].str()}}, std::string(verdict(r)) + "\n");
  return 0;
}

int run_gpost(const Query& q, const Model& m) {
  const auto w = as_guarded(m);
  const auto map = guarded_map(q, w);
  json repr = json::object();
  std::ostringstream text;
  for (StateId s = 0; s < w.num_states(); ++s) {
    if (!q.to.empty() && w.states.name(s) != q.to) continue;
    repr[w.states.name(s)] = map[s].str();
    text << w.states.name(s) << ": " << map[s].str() << '\n';
  }
  emit(q, "ok", repr, text.str());
  return 0;
}

int run_eqreach(const Query& q, const Model& m) {
  const auto& v = expect<EqCoca>(m, "eq");
  const auto& st = v.base.states;
  const bool r = eq_reach(v, st.id(q.from), parse_rat("value", q.value), st.id(q.to), parse_rat("target", q.target));
  emit(q, verdict(r), nullptr, std::string(verdict(r)) + "\n");
  return 0;
}

Sentence sentence_for(const Query& q, const Model& m) {
  const auto p = as_parametric(m);
  const auto from = p.states.id(q.from);
  const auto to = p.states.id(q.to);
  const auto a = parse_rat("value", q.value);
  const auto b = parse_rat("target", q.target);
  if (q.acyclic) return encode_acyclic(p, from, a, to, b);
  return build_sentence(p, from, a, to, b, q.width ? std::optional(q.width) : std::nullopt);
}

int run_encode(const Query& q, const Model& m) {
  const auto script = emit_smtlib(sentence_for(q, m));
  if (q.json_out) {
    write_text(q.output, q.output.empty() ? "" : script);
    emit(q, "ok", json{{"bytes", script.size()}, {"smtlib", q.output.empty() ? json(script) : json(q.output)}}, "");
  } else {
    write_text(q.output, script);
  }
  return 0;
}

int run_solve(const Query& q, const Model& m) {
  const auto s = sentence_for(q, m);
  if (!q.output.empty()) write_text(q.output, emit_smtlib(s));
  const auto r = solve(s, {q.solver, q.timeout});
  const std::string result = r == SolveResult::Sat ? "reachable" : r == SolveResult::Unsat ? "unreachable" : "unknown";
  emit(q, result, json{{"solver", q.solver}, {"answer", to_string(r)}}, result + "\n");
  return r == SolveResult::Unknown ? 4 : 0;
}

int run_gen_sat(const Query& q) {
  std::ifstream in(q.cnf);
  if (!in) throw UsageError("cannot read " + q.cnf);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto cnf = Cnf::parse_dimacs(buf.str());
  if (q.variant != "guards" && q.variant != "updates") throw UsageError("--variant must be guards or updates");
  const auto g = gen_sat_gadget(cnf, q.variant == "guards" ? GadgetVariant::Guards : GadgetVariant::Updates);
  const auto doc = model_to_json(Model(g.automaton));
  const auto& from = g.automaton.states.name(g.from);
  const auto& to = g.automaton.states.name(g.to);
  if (q.output.empty() && !q.json_out) {
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  if (!q.output.empty()) write_text(q.output, doc.dump(2) + "\n");
  emit(q, "ok", json{{"from", from}, {"to", to}, {"model", q.output.empty() ? doc : json(q.output)}},
       "from " + from + " to " + to + "\n");
  return 0;
}

int run_oracle_check(const Query& q, const Model& m) {
  const auto w = as_guarded(m);
  const auto p = w.states.id(q.from);
  const auto a = parse_rat("value", q.value);
  std::ostringstream text;
  json depths = json::array();
  bool ok = true;
  for (std::size_t k = 1; k <= q.depth; ++k) {
    const bool agree = succ_pow(w, initial_map(w, p, a), k).sets == enum_post_bounded(w, p, a, k).sets;
    ok = ok && agree;
    depths.push_back(agree);
    text << "depth " << k << ": " << (agree ? "agree" : "MISMATCH") << '\n';
  }
  const auto reach = compute_reach(w, p, a);
  const auto runs = sample_runs(w, p, a, q.trials, q.depth, q.seed);
  std::size_t outside = 0;
  for (const auto& c : runs) outside += is_contains(reach[c.state], c.value) ? 0 : 1;
  ok = ok && outside == 0;
  text << "samples: " << runs.size() << " configurations, " << outside << " outside the reachable map\n";
  text << (ok ? "agree" : "mismatch") << '\n';
  emit(q, ok ? "agree" : "mismatch", json{{"depths", depths}, {"samples", runs.size()}, {"outside", outside}},
       text.str());
  return ok ? 0 : 5;
}

int dispatch(const Query& q) {
  if (q.command == "gen-sat") return run_gen_sat(q);
  const auto m = load_model(q.file);
  if (q.command == "reach") return run_reach(q, m);
  if (q.command == "post") return run_post(q, m);
  if (q.command == "greach") return run_greach(q, m);
  if (q.command == "gpost") return run_gpost(q, m);
  if (q.command == "eqreach") return run_eqreach(q, m);
  if (q.command == "encode") return run_encode(q, m);
  if (q.command == "solve") return run_solve(q, m);
  if (q.command == "oracle-check") return run_oracle_check(q, m);
  throw UsageError("unknown command " + q.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachability for continuous one-counter automata"};
  app.require_subcommand(1);
  Query q;

  const auto common = [&](CLI::App* sub, bool needs_to, bool needs_target) {
    sub->add_option("--file", q.file, "automaton JSON document")->required();
    sub->add_option("--from", q.from, "start state")->required();
    sub->add_option("--value", q.value, "start value")->required();
    auto* to = sub->add_option("--to", q.to, "target state");
    auto* target = sub->add_option("--target", q.target, "target value");
    if (needs_to) to->required();
    if (needs_target) target->required();
    sub->add_flag("--json", q.json_out, "machine-readable output");
  };
  const auto solver_opts = [&](CLI::App* sub) {
    sub->add_flag("--acyclic", q.acyclic, "existential encoding for acyclic automata");
    sub->add_option("--width", q.width, "slots per state (default 4(|L|+1))");
    sub->add_option("-o,--output", q.output, "write the SMT-LIB script here");
  };

  common(app.add_subcommand("reach", "plain reachability of to(target)"), true, true);
  common(app.add_subcommand("post", "Post set of a plain automaton"), true, false);
  for (const auto* name : {"greach", "gpost"}) {
    auto* sub = app.add_subcommand(name, name == std::string("greach") ? "guarded reachability of to(target)"
                                                                      : "reachable sets of a guarded automaton");
    common(sub, name == std::string("greach"), name == std::string("greach"));
    sub->add_flag("--trace", q.trace, "print each fixpoint step on stderr");
  }
  common(app.add_subcommand("eqreach", "reachability with equality tests"), true, true);
  auto* encode = app.add_subcommand("encode", "emit the SMT-LIB sentence");
  common(encode, true, true);
  solver_opts(encode);
  auto* solve_cmd = app.add_subcommand("solve", "decide parametric reachability with an SMT solver");
  common(solve_cmd, true, true);
  solver_opts(solve_cmd);
  solve_cmd->add_option("--solver", q.solver, "solver command reading SMT-LIB on stdin");
  solve_cmd->add_option("--timeout", q.timeout, "seconds");
  auto* gen = app.add_subcommand("gen-sat", "3-SAT gadget automaton from DIMACS CNF");
  gen->add_option("--cnf", q.cnf, "DIMACS file")->required();
  gen->add_option("--variant", q.variant, "guards or updates");
  gen->add_option("-o,--output", q.output, "write the automaton here");
  gen->add_flag("--json", q.json_out, "machine-readable output");
  auto* oracle = app.add_subcommand("oracle-check", "compare the fixpoint engine with brute-force referees");
  common(oracle, false, false);
  oracle->add_option("--depth", q.depth, "path length bound");
  oracle->add_option("--trials", q.trials, "random runs");
  oracle->add_option("--seed", q.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  q.command = app.get_subcommands().front()->get_name();

  try {
    return dispatch(q);
  } catch (const UsageError& e) {
    std::cerr << "coca: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "coca: " << e.what() << '\n';
    return 3;
  } catch (const ModelError& e) {
    std::cerr << "coca: " << e.what() << '\n';
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "coca: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "coca: internal error: " << e.what() << '\n';
    return 5;
  }
}
