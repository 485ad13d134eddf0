// Quantifier-free linear rational arithmetic formulas, evaluation, and
// SMT-LIB 2 output.
//
// Constructors fold constants: an atom whose sides are both constant becomes
// true or false, and And/Or drop neutral children and short-circuit on
// absorbing ones. Formulas built from constant encodings therefore shrink to
// the cases that can still happen.

#ifndef COCA_FORMULA_HPP
#define COCA_FORMULA_HPP

#include "coca/model.hpp"
#include "coca/rational.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace coca {

/// sum of coeff * var, plus a constant.
class LinTerm {
public:
  LinTerm() = default;
  LinTerm(Rat c) : constant_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  LinTerm(long c) : constant_(c) {}            // NOLINT(google-explicit-constructor)
  LinTerm(int c) : constant_(c) {}             // NOLINT(google-explicit-constructor)
  static LinTerm var(const std::string& name);

  bool is_constant() const { return coeffs_.empty(); }
  const Rat& constant() const { return constant_; }
  const std::map<std::string, Rat>& coeffs() const { return coeffs_; }
  /// Throws UnboundVariable.
  Rat eval(const Valuation& mu) const;
  std::string str() const;

  LinTerm& operator+=(const LinTerm& o);
  LinTerm& operator-=(const LinTerm& o);
  LinTerm& operator*=(const Rat& k);
  LinTerm operator-() const;
  friend LinTerm operator+(LinTerm a, const LinTerm& b) { return a += b; }
  friend LinTerm operator-(LinTerm a, const LinTerm& b) { return a -= b; }
  friend LinTerm operator*(LinTerm a, const Rat& k) { return a *= k; }
  friend bool operator==(const LinTerm&, const LinTerm&) = default;

private:
  std::map<std::string, Rat> coeffs_;  // no zero entries
  Rat constant_;
};

/// term rel 0.
enum class Rel { Lt, Le, Eq };

class Formula {
public:
  enum class Kind { True, False, Atom, Not, And, Or };

  Formula();  // true
  static Formula truth(bool value);
  static Formula atom(const LinTerm& term, Rel rel);
  static Formula all(std::vector<Formula> fs);
  static Formula any(std::vector<Formula> fs);

  Kind kind() const;
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }
  const LinTerm& term() const;
  Rel rel() const;
  const std::vector<Formula>& children() const;

  /// Throws UnboundVariable for a variable the valuation lacks.
  bool eval(const Valuation& mu) const;
  /// Node count, shared subterms counted each time.
  std::size_t size() const;
  void collect_vars(std::set<std::string>& out) const;

  friend Formula operator&&(const Formula& a, const Formula& b) { return all({a, b}); }
  friend Formula operator||(const Formula& a, const Formula& b) { return any({a, b}); }
  friend Formula operator!(const Formula& a);

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Formula implies(const Formula& a, const Formula& b);
Formula lt(const LinTerm& a, const LinTerm& b);
Formula le(const LinTerm& a, const LinTerm& b);
Formula gt(const LinTerm& a, const LinTerm& b);
Formula ge(const LinTerm& a, const LinTerm& b);
Formula eq(const LinTerm& a, const LinTerm& b);
Formula ne(const LinTerm& a, const LinTerm& b);

/// exists E. forall U. body. Both blocks range over the rationals; domain
/// restrictions are part of the body.
struct Sentence {
  std::vector<std::string> exists;
  std::vector<std::string> forall;
  Formula body;
};

/// Closes a formula existentially over all of its variables.
Sentence existential(const Formula& f);

/// (set-logic LRA), one declare-const per existential variable, a single
/// assert (with a forall when the universal block is nonempty) and
/// (check-sat).
std::string emit_smtlib(const Sentence& s);

}  // namespace coca

#endif  // COCA_FORMULA_HPP
