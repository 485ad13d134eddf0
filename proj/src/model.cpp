#include "coca/model.hpp"

#include "coca/error.hpp"

#include <algorithm>
#include <cctype>

namespace coca {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s.front())) || s.front() == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

ParamEnd parse_end(std::string_view tok, std::string_view whole) {
  tok = trim(tok);
  if (tok == "inf" || tok == "+inf" || tok == "-inf" || Rat::try_parse(tok)) return Ext::parse(tok);
  if (is_identifier(tok)) return std::string(tok);
  throw ParseError("invalid interval '" + std::string(whole) + "'");
}

std::string end_str(const ParamEnd& e) {
  if (const auto* x = std::get_if<Ext>(&e)) return x->str();
  return std::get<std::string>(e);
}

Ext resolve(const ParamEnd& e, const Valuation& mu) {
  if (const auto* x = std::get_if<Ext>(&e)) return *x;
  const auto& name = std::get<std::string>(e);
  const auto it = mu.find(name);
  if (it == mu.end()) throw ModelError("no value for parameter '" + name + "'");
  return it->second;
}

void check_transitions(const std::vector<Transition>& ts, std::size_t n) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].src >= n || ts[i].dst >= n) throw ModelError("transition " + std::to_string(i) + " uses an unknown state");
  }
}

}  // namespace

StateId StateTable::add(const std::string& name) {
  if (name.empty()) throw ModelError("empty state name");
  if (index_.count(name)) throw ModelError("duplicate state '" + name + "'");
  index_.emplace(name, names_.size());
  names_.push_back(name);
  return names_.size() - 1;
}

StateId StateTable::id(const std::string& name) const {
  if (auto s = find(name)) return *s;
  throw ModelError("undeclared state '" + name + "'");
}

std::optional<StateId> StateTable::find(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateId GuardedCoca::add_state(const std::string& name, const Interval& guard) {
  const StateId s = states.add(name);
  tau.push_back(guard);
  return s;
}

void GuardedCoca::add_transition(StateId src, const Rat& update, StateId dst) {
  transitions.push_back({src, update, dst});
}

void GuardedCoca::validate() const {
  if (tau.size() != states.size()) throw ModelError("every state needs exactly one guard");
  check_transitions(transitions, states.size());
}

StateId Coca::add_state(const std::string& name) { return states.add(name); }

void Coca::add_transition(StateId src, const Rat& update, StateId dst) { transitions.push_back({src, update, dst}); }

void Coca::validate() const { check_transitions(transitions, states.size()); }

GuardedCoca Coca::as_guarded() const {
  GuardedCoca w;
  w.states = states;
  w.tau.assign(states.size(), tau);
  w.transitions = transitions;
  return w;
}

void EqCoca::validate() const {
  base.validate();
  if (phi.size() != base.states.size()) throw ModelError("equality-test table does not match the state count");
  for (const auto& z : phi) {
    if (z && !z->is_integer()) throw ModelError("equality tests must be integers, got " + z->str());
  }
}

ParamInterval ParamInterval::constant(const Interval& iv) {
  if (iv.is_empty()) return {Ext(1), false, Ext(0), false};
  return {iv.lo(), iv.lo_closed(), iv.hi(), iv.hi_closed()};
}

ParamInterval ParamInterval::parse(std::string_view text) {
  text = trim(text);
  if (text == "empty") return constant(Interval::empty());
  if (text.size() < 5) throw ParseError("invalid interval '" + std::string(text) + "'");
  const char oc = text.front();
  const char cc = text.back();
  if ((oc != '(' && oc != '[') || (cc != ')' && cc != ']')) throw ParseError("invalid interval '" + std::string(text) + "'");
  const auto body = text.substr(1, text.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) throw ParseError("invalid interval '" + std::string(text) + "'");
  ParamInterval r{parse_end(body.substr(0, comma), text), oc == '[', parse_end(body.substr(comma + 1), text), cc == ']'};
  if (r.is_constant()) {
    // Constant guards go through the interval parser for full validation.
    return constant(Interval::parse(text));
  }
  for (const ParamEnd* e : {&r.lo, &r.hi}) {
    if (const auto* x = std::get_if<Ext>(e); x && !x->is_finite()) {
      const bool closed = e == &r.lo ? r.lo_closed : r.hi_closed;
      if (closed) throw ParseError("infinite endpoint cannot be closed in '" + std::string(text) + "'");
    }
  }
  return r;
}

bool ParamInterval::is_constant() const {
  return std::holds_alternative<Ext>(lo) && std::holds_alternative<Ext>(hi);
}

std::string ParamInterval::str() const {
  if (is_constant()) {
    return Interval::make(std::get<Ext>(lo), lo_closed, std::get<Ext>(hi), hi_closed).str();
  }
  return std::string(lo_closed ? "[" : "(") + end_str(lo) + "," + end_str(hi) + (hi_closed ? "]" : ")");
}

StateId ParametricCoca::add_state(const std::string& name, const ParamInterval& guard) {
  const StateId s = states.add(name);
  tau.push_back(guard);
  return s;
}

void ParametricCoca::add_transition(StateId src, ParamUpdate update, StateId dst) {
  transitions.push_back({src, std::move(update), dst});
}

bool ParametricCoca::has_param(const std::string& x) const {
  return std::find(params.begin(), params.end(), x) != params.end();
}

bool ParametricCoca::has_parametric_guard() const {
  return std::any_of(tau.begin(), tau.end(), [](const ParamInterval& g) { return !g.is_constant(); });
}

void ParametricCoca::validate() const {
  if (tau.size() != states.size()) throw ModelError("every state needs exactly one guard");
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!is_identifier(params[i])) throw ModelError("invalid parameter name '" + params[i] + "'");
    if (std::find(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(i), params[i]) !=
        params.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw ModelError("duplicate parameter '" + params[i] + "'");
    }
  }
  const auto check = [&](const std::string& x, const std::string& where) {
    if (!has_param(x)) throw ModelError(where + " uses undeclared parameter '" + x + "'");
  };
  for (std::size_t s = 0; s < tau.size(); ++s) {
    for (const ParamEnd* e : {&tau[s].lo, &tau[s].hi}) {
      if (const auto* x = std::get_if<std::string>(e)) check(*x, "guard of '" + states.name(s) + "'");
    }
  }
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const auto& t = transitions[i];
    if (t.src >= states.size() || t.dst >= states.size()) {
      throw ModelError("transition " + std::to_string(i) + " uses an unknown state");
    }
    if (const auto* x = std::get_if<std::string>(&t.update)) check(*x, "transition " + std::to_string(i));
  }
}

ParametricCoca ParametricCoca::from_guarded(const GuardedCoca& w) {
  ParametricCoca p;
  p.states = w.states;
  for (const auto& g : w.tau) p.tau.push_back(ParamInterval::constant(g));
  for (const auto& t : w.transitions) p.transitions.push_back({t.src, t.update, t.dst});
  return p;
}

GuardedCoca instantiate(const ParametricCoca& p, const Valuation& mu) {
  for (const auto& x : p.params) {
    if (!mu.count(x)) throw ModelError("no value for parameter '" + x + "'");
  }
  GuardedCoca w;
  w.states = p.states;
  for (const auto& g : p.tau) w.tau.push_back(Interval::make(resolve(g.lo, mu), g.lo_closed, resolve(g.hi, mu), g.hi_closed));
  for (const auto& t : p.transitions) {
    Rat z;
    if (const auto* c = std::get_if<Rat>(&t.update)) {
      z = *c;
    } else {
      z = resolve(std::get<std::string>(t.update), mu).value();
    }
    w.transitions.push_back({t.src, z, t.dst});
  }
  return w;
}

Rat run_effect(const GuardedCoca& w, const Run& run) {
  Rat d;
  for (const auto& st : run.steps) d += st.alpha * w.transitions.at(st.transition).update;
  return d;
}

Trace run_trace(const GuardedCoca& w, const Run& run) {
  Trace tr;
  StateId cur = run.start;
  Rat v = run.value;
  tr.configs.push_back({cur, v});
  bool ok = cur < w.num_states() && w.tau[cur].contains(v);
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    const auto& st = run.steps[i];
    if (st.transition >= w.transitions.size()) throw BrokenChain("step " + std::to_string(i) + ": unknown transition");
    const auto& t = w.transitions[st.transition];
    if (t.src != cur) throw BrokenChain("step " + std::to_string(i) + ": transition does not leave the current state");
    if (st.alpha.sign() <= 0 || Rat(1) < st.alpha) {
      throw BrokenChain("step " + std::to_string(i) + ": scalar " + st.alpha.str() + " outside (0,1]");
    }
    v += st.alpha * t.update;
    cur = t.dst;
    tr.configs.push_back({cur, v});
    ok = ok && w.tau[cur].contains(v);
  }
  tr.admissible = ok;
  return tr;
}

Run run_scale(const Run& run, const Rat& beta) {
  if (beta.sign() <= 0 || Rat(1) < beta) throw BrokenChain("scale factor " + beta.str() + " outside (0,1]");
  Run out = run;
  for (auto& st : out.steps) st.alpha *= beta;
  return out;
}

}  // namespace coca
