#include "coca/formula.hpp"

#include "coca/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace coca {

struct Formula::Node {
  Kind kind = Kind::True;
  LinTerm term;
  Rel rel = Rel::Eq;
  std::vector<Formula> kids;
};

LinTerm LinTerm::var(const std::string& name) {
  LinTerm t;
  t.coeffs_[name] = Rat(1);
  return t;
}

Rat LinTerm::eval(const Valuation& mu) const {
  Rat r = constant_;
  for (const auto& [x, c] : coeffs_) {
    const auto it = mu.find(x);
    if (it == mu.end()) throw UnboundVariable("no value for '" + x + "'");
    r += c * it->second;
  }
  return r;
}

std::string LinTerm::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    if (c != Rat(1)) os << c << '*';
    os << x;
  }
  if (first || !constant_.is_zero()) os << (first ? "" : " + ") << constant_;
  return os.str();
}

LinTerm& LinTerm::operator+=(const LinTerm& o) {
  constant_ += o.constant_;
  for (const auto& [x, c] : o.coeffs_) {
    auto& slot = coeffs_[x];
    slot += c;
    if (slot.is_zero()) coeffs_.erase(x);
  }
  return *this;
}

LinTerm& LinTerm::operator-=(const LinTerm& o) { return *this += -o; }

LinTerm& LinTerm::operator*=(const Rat& k) {
  if (k.is_zero()) {
    coeffs_.clear();
    constant_ = Rat(0);
    return *this;
  }
  constant_ *= k;
  for (auto& [x, c] : coeffs_) c *= k;
  return *this;
}

LinTerm LinTerm::operator-() const {
  LinTerm t = *this;
  return t *= Rat(-1);
}

namespace {

bool holds(const Rat& v, Rel rel) {
  switch (rel) {
    case Rel::Lt: return v.sign() < 0;
    case Rel::Le: return v.sign() <= 0;
    case Rel::Eq: return v.is_zero();
  }
  return false;
}

}  // namespace

Formula::Formula() : Formula(truth(true)) {}

Formula Formula::truth(bool value) {
  static const auto t = std::make_shared<const Node>(Node{Kind::True, {}, Rel::Eq, {}});
  static const auto f = std::make_shared<const Node>(Node{Kind::False, {}, Rel::Eq, {}});
  return Formula(value ? t : f);
}

Formula Formula::atom(const LinTerm& term, Rel rel) {
  if (term.is_constant()) return truth(holds(term.constant(), rel));
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, term, rel, {}}));
}

Formula Formula::all(std::vector<Formula> fs) {
  std::vector<Formula> kept;
  for (auto& f : fs) {
    if (f.is_false()) return f;
    if (f.is_true()) continue;
    if (f.kind() == Kind::And) {
      kept.insert(kept.end(), f.children().begin(), f.children().end());
    } else {
      kept.push_back(std::move(f));
    }
  }
  if (kept.empty()) return truth(true);
  if (kept.size() == 1) return kept.front();
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, Rel::Eq, std::move(kept)}));
}

Formula Formula::any(std::vector<Formula> fs) {
  std::vector<Formula> kept;
  for (auto& f : fs) {
    if (f.is_true()) return f;
    if (f.is_false()) continue;
    if (f.kind() == Kind::Or) {
      kept.insert(kept.end(), f.children().begin(), f.children().end());
    } else {
      kept.push_back(std::move(f));
    }
  }
  if (kept.empty()) return truth(false);
  if (kept.size() == 1) return kept.front();
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, Rel::Eq, std::move(kept)}));
}

Formula operator!(const Formula& a) {
  switch (a.kind()) {
    case Formula::Kind::True: return Formula::truth(false);
    case Formula::Kind::False: return Formula::truth(true);
    case Formula::Kind::Not: return a.children().front();
    default: break;
  }
  return Formula(std::make_shared<const Formula::Node>(Formula::Node{Formula::Kind::Not, {}, Rel::Eq, {a}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const LinTerm& Formula::term() const { return node_->term; }
Rel Formula::rel() const { return node_->rel; }
const std::vector<Formula>& Formula::children() const { return node_->kids; }

bool Formula::eval(const Valuation& mu) const {
  switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return holds(term().eval(mu), rel());
    case Kind::Not: return !children().front().eval(mu);
    case Kind::And:
      for (const auto& c : children()) {
        if (!c.eval(mu)) return false;
      }
      return true;
    case Kind::Or:
      for (const auto& c : children()) {
        if (c.eval(mu)) return true;
      }
      return false;
  }
  return false;
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

void Formula::collect_vars(std::set<std::string>& out) const {
  if (kind() == Kind::Atom) {
    for (const auto& [x, c] : term().coeffs()) out.insert(x);
  }
  for (const auto& c : children()) c.collect_vars(out);
}

Formula implies(const Formula& a, const Formula& b) { return !a || b; }
Formula lt(const LinTerm& a, const LinTerm& b) { return Formula::atom(a - b, Rel::Lt); }
Formula le(const LinTerm& a, const LinTerm& b) { return Formula::atom(a - b, Rel::Le); }
Formula gt(const LinTerm& a, const LinTerm& b) { return lt(b, a); }
Formula ge(const LinTerm& a, const LinTerm& b) { return le(b, a); }
Formula eq(const LinTerm& a, const LinTerm& b) { return Formula::atom(a - b, Rel::Eq); }
Formula ne(const LinTerm& a, const LinTerm& b) { return !eq(a, b); }

Sentence existential(const Formula& f) {
  std::set<std::string> vars;
  f.collect_vars(vars);
  return {{vars.begin(), vars.end()}, {}, f};
}

namespace {

std::string smt_rat(const Rat& r) {
  const Rat a = r.abs();
  std::string body = a.is_integer() ? a.num().get_str() : "(/ " + a.num().get_str() + " " + a.den().get_str() + ")";
  return r.sign() < 0 ? "(- " + body + ")" : body;
}

// Names outside the simple-symbol alphabet are written as |quoted| symbols.
std::string smt_symbol(const std::string& x) {
  static const std::string extra = "~!@$%^&*_-+=<>.?/";
  const bool simple = !x.empty() && !std::isdigit(static_cast<unsigned char>(x.front())) &&
                      std::all_of(x.begin(), x.end(), [](char c) {
                        return std::isalnum(static_cast<unsigned char>(c)) || extra.find(c) != std::string::npos;
                      });
  return simple ? x : "|" + x + "|";
}

void smt_term(std::ostream& os, const LinTerm& t) {
  std::vector<std::string> parts;
  for (const auto& [x, c] : t.coeffs()) {
    parts.push_back(c == Rat(1) ? smt_symbol(x) : "(* " + smt_rat(c) + " " + smt_symbol(x) + ")");
  }
  if (parts.size() == 1) {
    os << parts.front();
    return;
  }
  os << "(+";
  for (const auto& p : parts) os << ' ' << p;
  os << ')';
}

void smt_formula(std::ostream& os, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: os << "true"; return;
    case K::False: os << "false"; return;
    case K::Atom: {
      // Variables on the left, the constant moved to the right.
      const char* op = f.rel() == Rel::Lt ? "<" : f.rel() == Rel::Le ? "<=" : "=";
      os << '(' << op << ' ';
      smt_term(os, f.term());
      os << ' ' << smt_rat(-f.term().constant()) << ')';
      return;
    }
    case K::Not:
      os << "(not ";
      smt_formula(os, f.children().front());
      os << ')';
      return;
    case K::And:
    case K::Or:
      os << (f.kind() == K::And ? "(and" : "(or");
      for (const auto& c : f.children()) {
        os << ' ';
        smt_formula(os, c);
      }
      os << ')';
      return;
  }
}

}  // namespace

std::string emit_smtlib(const Sentence& s) {
  std::ostringstream os;
  os << "(set-logic LRA)\n";
  for (const auto& x : s.exists) os << "(declare-const " << smt_symbol(x) << " Real)\n";
  os << "(assert ";
  if (!s.forall.empty()) {
    os << "(forall (";
    for (std::size_t i = 0; i < s.forall.size(); ++i) os << (i ? " " : "") << '(' << smt_symbol(s.forall[i]) << " Real)";
    os << ") ";
  }
  smt_formula(os, s.body);
  if (!s.forall.empty()) os << ')';
  os << ")\n(check-sat)\n";
  return os.str();
}

}  // namespace coca
