// Automaton data model: plain, guarded, equality-testing and parametric
// continuous one-counter automata, plus runs over them.
//
// State names are interned to dense indices (StateId) in declaration order;
// transitions are referenced by their index in the transition vector.

#ifndef COCA_MODEL_HPP
#define COCA_MODEL_HPP

#include "coca/interval.hpp"
#include "coca/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace coca {

using StateId = std::size_t;

class StateTable {
public:
  /// Throws ModelError on a duplicate or empty name.
  StateId add(const std::string& name);
  /// Throws ModelError on an unknown name.
  StateId id(const std::string& name) const;
  std::optional<StateId> find(const std::string& name) const;
  const std::string& name(StateId s) const { return names_.at(s); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const StateTable& a, const StateTable& b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> index_;
};

struct Transition {
  StateId src = 0;
  Rat update;
  StateId dst = 0;
  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Per-state guards. A plain automaton is the case where all guards agree.
struct GuardedCoca {
  StateTable states;
  std::vector<Interval> tau;
  std::vector<Transition> transitions;

  StateId add_state(const std::string& name, const Interval& guard);
  void add_transition(StateId src, const Rat& update, StateId dst);
  std::size_t num_states() const { return states.size(); }
  /// Throws ModelError if an index is out of range or a guard is missing.
  void validate() const;

  friend bool operator==(const GuardedCoca&, const GuardedCoca&) = default;
};

/// Single global guard.
struct Coca {
  StateTable states;
  Interval tau;
  std::vector<Transition> transitions;

  StateId add_state(const std::string& name);
  void add_transition(StateId src, const Rat& update, StateId dst);
  std::size_t num_states() const { return states.size(); }
  void validate() const;
  GuardedCoca as_guarded() const;

  friend bool operator==(const Coca&, const Coca&) = default;
};

/// Plain automaton where some states only admit one exact counter value.
struct EqCoca {
  Coca base;
  /// phi[s] is the tested value, or nullopt when s is unconstrained.
  std::vector<std::optional<Rat>> phi;

  void validate() const;
  friend bool operator==(const EqCoca&, const EqCoca&) = default;
};

/// An interval endpoint that is either a constant or a parameter name.
using ParamEnd = std::variant<Ext, std::string>;

struct ParamInterval {
  ParamEnd lo;
  bool lo_closed = false;
  ParamEnd hi;
  bool hi_closed = false;

  static ParamInterval constant(const Interval& iv);
  /// "[x1,x1]", "(0,+inf)", "[-3,y]"; bare "empty" is accepted too.
  static ParamInterval parse(std::string_view text);
  bool is_constant() const;
  std::string str() const;

  friend bool operator==(const ParamInterval&, const ParamInterval&) = default;
};

using ParamUpdate = std::variant<Rat, std::string>;

struct ParamTransition {
  StateId src = 0;
  ParamUpdate update;
  StateId dst = 0;
  friend bool operator==(const ParamTransition&, const ParamTransition&) = default;
};

struct ParametricCoca {
  std::vector<std::string> params;
  StateTable states;
  std::vector<ParamInterval> tau;
  std::vector<ParamTransition> transitions;

  StateId add_state(const std::string& name, const ParamInterval& guard);
  void add_transition(StateId src, ParamUpdate update, StateId dst);
  std::size_t num_states() const { return states.size(); }
  bool has_param(const std::string& x) const;
  /// True when some guard endpoint is a parameter.
  bool has_parametric_guard() const;
  /// Also checks that every parameter used is declared.
  void validate() const;

  static ParametricCoca from_guarded(const GuardedCoca& w);

  friend bool operator==(const ParametricCoca&, const ParametricCoca&) = default;
};

using Valuation = std::map<std::string, Rat>;

/// Replaces every parameter by its value. Throws ModelError when mu misses a
/// declared parameter.
GuardedCoca instantiate(const ParametricCoca& p, const Valuation& mu);

struct Step {
  Rat alpha;
  std::size_t transition = 0;
  friend bool operator==(const Step&, const Step&) = default;
};

struct Run {
  StateId start = 0;
  Rat value;
  std::vector<Step> steps;
  friend bool operator==(const Run&, const Run&) = default;
};

struct Config {
  StateId state = 0;
  Rat value;
  friend bool operator==(const Config&, const Config&) = default;
};

struct Trace {
  std::vector<Config> configs;
  bool admissible = false;
};

/// Effect of a run: sum of alpha_i * update_i.
Rat run_effect(const GuardedCoca& w, const Run& run);

/// Throws BrokenChain when transitions do not chain, do not start at
/// run.start, or some alpha lies outside (0,1].
Trace run_trace(const GuardedCoca& w, const Run& run);

/// Multiplies every scalar by beta. Throws BrokenChain unless beta in (0,1].
Run run_scale(const Run& run, const Rat& beta);

}  // namespace coca

#endif  // COCA_MODEL_HPP
