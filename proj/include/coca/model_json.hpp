// JSON documents describing automata.
//
//   {"type": "guarded"|"coca"|"eq"|"parametric",
//    "params": ["x1", ...],
//    "states": [{"id": "p", "guard": "[-5,15]"}, ...],
//    "transitions": [{"src": "p", "update": "5", "dst": "r"}, ...],
//    "global_guard": "[0,10]",
//    "eq_tests": {"r": "20"}}
//
// "coca" and "eq" documents take their guard from "global_guard" and ignore
// per-state guards; "params" is only meaningful for "parametric". Updates
// are integers, p/q fractions, or (parametric only) parameter names.

#ifndef COCA_MODEL_JSON_HPP
#define COCA_MODEL_JSON_HPP

#include "coca/model.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>

namespace coca {

using Model = std::variant<GuardedCoca, Coca, EqCoca, ParametricCoca>;

/// Throws ParseError (malformed JSON or fields, with a location) or
/// ModelError (structural problems).
Model model_from_json(const nlohmann::json& doc);
Model parse_model(std::string_view text);
Model load_model(const std::string& path);

nlohmann::json model_to_json(const Model& m);
std::string serialize_model(const Model& m);

/// Views a document as a guarded automaton: plain automata get their global
/// guard on every state, parametric ones must have no parameters. Equality
/// tests are rejected.
GuardedCoca as_guarded(const Model& m);

}  // namespace coca

#endif  // COCA_MODEL_JSON_HPP
