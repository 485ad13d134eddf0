#include "coca/gadgets.hpp"

#include "coca/error.hpp"

#include <cstdlib>
#include <sstream>

namespace coca {

Cnf Cnf::parse_dimacs(std::string_view text) {
  Cnf cnf;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  std::vector<int> clause;
  std::size_t declared = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> cnf.num_vars >> declared) || fmt != "cnf" || cnf.num_vars < 0) {
        throw ParseError("bad DIMACS header: " + line);
      }
      header = true;
      continue;
    }
    if (!header) throw ParseError("DIMACS clause before the 'p cnf' header");
    do {
      char* end = nullptr;
      const long lit = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') throw ParseError("bad DIMACS literal '" + tok + "'");
      if (lit == 0) {
        if (clause.empty()) throw EmptyClause("empty clause in DIMACS input");
        cnf.clauses.push_back(std::move(clause));
        clause.clear();
      } else {
        clause.push_back(static_cast<int>(lit));
      }
    } while (ls >> tok);
  }
  if (!header) throw ParseError("missing 'p cnf' header");
  if (!clause.empty()) cnf.clauses.push_back(std::move(clause));
  if (cnf.clauses.size() != declared) {
    throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(cnf.clauses.size()));
  }
  cnf.validate();
  return cnf;
}

std::string Cnf::dimacs() const {
  std::ostringstream os;
  os << "p cnf " << num_vars << ' ' << clauses.size() << '\n';
  for (const auto& c : clauses) {
    for (int lit : c) os << lit << ' ';
    os << "0\n";
  }
  return os.str();
}

void Cnf::validate() const {
  for (const auto& c : clauses) {
    if (c.empty()) throw EmptyClause("empty clause");
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > num_vars) throw ModelError("literal " + std::to_string(lit) + " out of range");
    }
  }
}

bool Cnf::satisfied_by(const std::vector<bool>& assignment) const {
  for (const auto& c : clauses) {
    bool sat = false;
    for (int lit : c) sat = sat || assignment.at(static_cast<std::size_t>(std::abs(lit) - 1)) == (lit > 0);
    if (!sat) return false;
  }
  return true;
}

std::string gadget_param(int var) { return "x" + std::to_string(var); }

Gadget gen_sat_gadget(const Cnf& cnf, GadgetVariant variant) {
  cnf.validate();
  ParametricCoca p;
  for (int i = 1; i <= cnf.num_vars; ++i) p.params.push_back(gadget_param(i));
  const auto zero = ParamInterval::constant(Interval::point(0));
  const auto one = ParamInterval::constant(Interval::point(1));
  const auto at = [](const std::string& x) { return ParamInterval{x, true, x, true}; };
  const auto state = [&](const std::string& name, const ParamInterval& g) { return p.add_state(name, g); };

  Gadget g;
  std::optional<StateId> last;
  const auto link = [&](StateId entry, StateId exit) {
    if (last) p.add_transition(*last, Rat(0), entry);
    else g.from = entry;
    last = exit;
  };

  for (int i = 1; i <= cnf.num_vars; ++i) {
    const auto x = gadget_param(i);
    const auto si = std::to_string(i);
    const auto entry = state("p" + si, zero);
    const auto exit = state("q" + si, zero);
    if (variant == GadgetVariant::Guards) {
      // Either through value 1 checked against x, or staying at 0.
      const auto up = state("p" + si + "_one", one);
      const auto check_one = state("p" + si + "_is1", at(x));
      const auto check_zero = state("p" + si + "_is0", at(x));
      p.add_transition(entry, Rat(1), up);
      p.add_transition(up, Rat(0), check_one);
      p.add_transition(check_one, Rat(-1), exit);
      p.add_transition(entry, Rat(0), check_zero);
      p.add_transition(check_zero, Rat(0), exit);
    } else {
      const auto mid = state("p" + si + "_val", ParamInterval::constant(Interval::closed(0, 1)));
      const auto top = state("p" + si + "_is1", one);
      p.add_transition(entry, x, mid);
      p.add_transition(mid, Rat(0), exit);
      p.add_transition(mid, Rat(0), top);
      p.add_transition(top, Rat(-1), exit);
    }
    link(entry, exit);
  }

  for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
    const auto sj = std::to_string(j + 1);
    const auto entry = state("r" + sj, zero);
    const auto exit = state("s" + sj, zero);
    for (std::size_t k = 0; k < cnf.clauses[j].size(); ++k) {
      const int lit = cnf.clauses[j][k];
      const auto x = gadget_param(std::abs(lit));
      const auto name = "r" + sj + "_l" + std::to_string(k + 1);
      if (variant == GadgetVariant::Guards) {
        const auto mid = state(name, at(x));
        p.add_transition(entry, Rat(lit > 0 ? 1 : 0), mid);
        p.add_transition(mid, Rat(lit > 0 ? -1 : 0), exit);
      } else {
        const auto mid = state(name, lit > 0 ? one : zero);
        p.add_transition(entry, x, mid);
        p.add_transition(mid, Rat(lit > 0 ? -1 : 0), exit);
      }
    }
    link(entry, exit);
  }

  if (!last) {
    // No variables and no clauses: a single state.
    g.from = state("p0", zero);
    last = g.from;
  }
  g.to = *last;
  g.automaton = std::move(p);
  g.automaton.validate();
  return g;
}

Rat rescale_factor(const Valuation& mu) {
  Rat lambda(1);
  for (const auto& [x, v] : mu) lambda *= Rat(mpq_class(v.den()));
  return lambda;
}

Valuation rescale_to_integer(const Valuation& mu, const ParametricCoca& p) {
  if (p.has_parametric_guard()) throw ParametricGuardPresent("rescaling needs constant guards");
  const Rat lambda = rescale_factor(mu);
  Valuation out;
  for (const auto& [x, v] : mu) out[x] = v * lambda;
  return out;
}

}  // namespace coca
