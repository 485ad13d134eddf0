#include "coca/model_json.hpp"

#include "coca/error.hpp"

#include <fstream>
#include <sstream>

namespace coca {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::string as_string(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(where, "expected a string");
}

Interval parse_interval_at(const json& v, const std::string& where) {
  try {
    return Interval::parse(as_string(v, where));
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

Rat parse_rat_at(const json& v, const std::string& where) {
  const auto s = as_string(v, where);
  if (auto r = Rat::try_parse(s)) return *r;
  fail(where, "invalid rational '" + s + "'");
}

// Rejects unknown keys so that typos do not silently drop data.
void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [k, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) fail(where, "unexpected key \"" + k + "\"");
  }
}

struct Skeleton {
  StateTable states;
  std::vector<json> guards;  // raw guard fields, null when absent
};

Skeleton read_states(const json& doc) {
  const auto& arr = member(doc, "states", "document");
  if (!arr.is_array()) fail("states", "expected an array");
  if (arr.empty()) throw ModelError("states: an automaton needs at least one state");
  Skeleton sk;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "states[" + std::to_string(i) + "]";
    if (!arr[i].is_object()) fail(where, "expected an object");
    check_keys(arr[i], {"id", "guard"}, where);
    const auto name = as_string(member(arr[i], "id", where), where + ".id");
    try {
      sk.states.add(name);
    } catch (const ModelError& e) {
      throw ModelError(where + ": " + e.what());
    }
    sk.guards.push_back(arr[i].contains("guard") ? arr[i]["guard"] : json());
  }
  return sk;
}

template <class F>
void for_transitions(const json& doc, const StateTable& states, F&& f) {
  if (!doc.contains("transitions")) return;
  const auto& arr = doc["transitions"];
  if (!arr.is_array()) fail("transitions", "expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "transitions[" + std::to_string(i) + "]";
    if (!arr[i].is_object()) fail(where, "expected an object");
    check_keys(arr[i], {"src", "update", "dst"}, where);
    const auto src = as_string(member(arr[i], "src", where), where + ".src");
    const auto dst = as_string(member(arr[i], "dst", where), where + ".dst");
    const auto s = states.find(src);
    const auto d = states.find(dst);
    if (!s) throw ModelError(where + ".src: undeclared state '" + src + "'");
    if (!d) throw ModelError(where + ".dst: undeclared state '" + dst + "'");
    f(*s, *d, member(arr[i], "update", where), where + ".update");
  }
}

}  // namespace

Model model_from_json(const json& doc) {
  if (!doc.is_object()) fail("document", "expected an object");
  check_keys(doc, {"type", "params", "states", "transitions", "global_guard", "eq_tests"}, "document");
  const auto type = as_string(member(doc, "type", "document"), "type");
  const auto sk = read_states(doc);

  if (type == "guarded") {
    GuardedCoca w;
    w.states = sk.states;
    for (std::size_t i = 0; i < sk.guards.size(); ++i) {
      const std::string where = "states[" + std::to_string(i) + "].guard";
      if (sk.guards[i].is_null()) fail(where, "guarded automata need a guard on every state");
      w.tau.push_back(parse_interval_at(sk.guards[i], where));
    }
    for_transitions(doc, sk.states, [&](StateId s, StateId d, const json& u, const std::string& where) {
      w.add_transition(s, parse_rat_at(u, where), d);
    });
    return w;
  }
  if (type == "coca" || type == "eq") {
    Coca c;
    c.states = sk.states;
    c.tau = parse_interval_at(member(doc, "global_guard", "document"), "global_guard");
    for_transitions(doc, sk.states, [&](StateId s, StateId d, const json& u, const std::string& where) {
      c.add_transition(s, parse_rat_at(u, where), d);
    });
    if (type == "coca") {
      if (doc.contains("eq_tests")) fail("eq_tests", "only allowed in \"eq\" documents");
      return c;
    }
    EqCoca e;
    e.base = std::move(c);
    e.phi.assign(e.base.states.size(), std::nullopt);
    if (doc.contains("eq_tests")) {
      const auto& tests = doc["eq_tests"];
      if (!tests.is_object()) fail("eq_tests", "expected an object");
      for (const auto& [name, val] : tests.items()) {
        const auto s = e.base.states.find(name);
        if (!s) throw ModelError("eq_tests: undeclared state '" + name + "'");
        e.phi[*s] = parse_rat_at(val, "eq_tests." + name);
      }
    }
    e.validate();
    return e;
  }
  if (type == "parametric") {
    ParametricCoca p;
    if (doc.contains("params")) {
      const auto& ps = doc["params"];
      if (!ps.is_array()) fail("params", "expected an array");
      for (std::size_t i = 0; i < ps.size(); ++i) p.params.push_back(as_string(ps[i], "params[" + std::to_string(i) + "]"));
    }
    p.states = sk.states;
    for (std::size_t i = 0; i < sk.guards.size(); ++i) {
      const std::string where = "states[" + std::to_string(i) + "].guard";
      if (sk.guards[i].is_null()) fail(where, "parametric automata need a guard on every state");
      try {
        p.tau.push_back(ParamInterval::parse(as_string(sk.guards[i], where)));
      } catch (const ParseError& e) {
        fail(where, e.what());
      }
    }
    for_transitions(doc, sk.states, [&](StateId s, StateId d, const json& u, const std::string& where) {
      const auto text = as_string(u, where);
      ParamUpdate upd;
      if (auto r = Rat::try_parse(text)) {
        upd = *r;
      } else {
        upd = text;
      }
      p.add_transition(s, upd, d);
    });
    p.validate();
    return p;
  }
  fail("type", "unknown automaton type '" + type + "'");
}

Model parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  return model_from_json(doc);
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

namespace {

json transitions_json(const StateTable& st, const std::vector<Transition>& ts) {
  json arr = json::array();
  for (const auto& t : ts) arr.push_back({{"src", st.name(t.src)}, {"update", t.update.str()}, {"dst", st.name(t.dst)}});
  return arr;
}

json plain_states(const StateTable& st) {
  json arr = json::array();
  for (const auto& n : st.names()) arr.push_back({{"id", n}});
  return arr;
}

}  // namespace

json model_to_json(const Model& m) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        json doc;
        if constexpr (std::is_same_v<T, GuardedCoca>) {
          doc["type"] = "guarded";
          json states = json::array();
          for (std::size_t i = 0; i < v.states.size(); ++i) states.push_back({{"id", v.states.name(i)}, {"guard", v.tau[i].str()}});
          doc["states"] = states;
          doc["transitions"] = transitions_json(v.states, v.transitions);
        } else if constexpr (std::is_same_v<T, Coca>) {
          doc["type"] = "coca";
          doc["states"] = plain_states(v.states);
          doc["transitions"] = transitions_json(v.states, v.transitions);
          doc["global_guard"] = v.tau.str();
        } else if constexpr (std::is_same_v<T, EqCoca>) {
          doc["type"] = "eq";
          doc["states"] = plain_states(v.base.states);
          doc["transitions"] = transitions_json(v.base.states, v.base.transitions);
          doc["global_guard"] = v.base.tau.str();
          json tests = json::object();
          for (std::size_t i = 0; i < v.phi.size(); ++i) {
            if (v.phi[i]) tests[v.base.states.name(i)] = v.phi[i]->str();
          }
          doc["eq_tests"] = tests;
        } else {
          doc["type"] = "parametric";
          doc["params"] = v.params;
          json states = json::array();
          for (std::size_t i = 0; i < v.states.size(); ++i) states.push_back({{"id", v.states.name(i)}, {"guard", v.tau[i].str()}});
          doc["states"] = states;
          json arr = json::array();
          for (const auto& t : v.transitions) {
            const std::string u = std::holds_alternative<Rat>(t.update) ? std::get<Rat>(t.update).str()
                                                                        : std::get<std::string>(t.update);
            arr.push_back({{"src", v.states.name(t.src)}, {"update", u}, {"dst", v.states.name(t.dst)}});
          }
          doc["transitions"] = arr;
        }
        return doc;
      },
      m);
}

std::string serialize_model(const Model& m) { return model_to_json(m).dump(2); }

GuardedCoca as_guarded(const Model& m) {
  if (const auto* w = std::get_if<GuardedCoca>(&m)) return *w;
  if (const auto* c = std::get_if<Coca>(&m)) return c->as_guarded();
  if (const auto* p = std::get_if<ParametricCoca>(&m)) {
    if (!p->params.empty()) throw ModelError("parametric automaton needs a valuation first");
    return instantiate(*p, {});
  }
  throw ModelError("automata with equality tests have no guarded view");
}

}  // namespace coca
