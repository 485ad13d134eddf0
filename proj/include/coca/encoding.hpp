// Intervals as tuples of linear terms, and the formulas that describe set
// operations on them.
//
// An encoding (b, t, bot, top) has flags in {0,1,2}: 0 is an open endpoint,
// 1 a closed one, 2 an infinite one (the matching b or t is then ignored).
// It denotes the empty set iff neither flag is 2 and either b > t, or b = t
// without both flags being 1. Encodings are not unique; every relation
// below compares denoted sets, never raw tuples.
//
// Each phi_* function returns a quantifier-free formula that holds under a
// valuation exactly when the stated set relation holds between the denoted
// intervals. Flag domains are not included; conjoin enc_domain for flag
// variables.

#ifndef COCA_ENCODING_HPP
#define COCA_ENCODING_HPP

#include "coca/formula.hpp"
#include "coca/interval.hpp"
#include "coca/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coca {

struct IntervalEnc {
  LinTerm b;
  LinTerm t;
  LinTerm bot;
  LinTerm top;
};

using EncVec = std::vector<IntervalEnc>;

/// The denoted interval. Throws BadFlag.
Interval enc_eval(const Rat& b, const Rat& t, const Rat& bot, const Rat& top);
Interval enc_value(const IntervalEnc& x, const Valuation& mu);

/// Flag of a Minkowski-sum endpoint: 2 if either is 2, else the minimum.
int msum(int i, int j);

/// Constant encoding; the empty interval becomes (1,0,0,0).
IntervalEnc enc_const(const Interval& iv);
/// Guard with parameter endpoints replaced by their variables.
IntervalEnc enc_guard(const ParamInterval& g);
/// Variables Ib_<name>, It_<name>, Ibot_<name>, Itop_<name>; `stem`
/// replaces the leading "I".
IntervalEnc enc_vars(const std::string& stem, const std::string& name);
/// Assigns the encoding variables of x (which must be bare variables).
void enc_assign(Valuation& mu, const IntervalEnc& x, const Interval& value);
std::vector<std::string> enc_var_names(const IntervalEnc& x);

std::string param_var(const std::string& param);
LinTerm update_term(const ParamUpdate& u);

Formula flag_domain(const LinTerm& f);
Formula enc_domain(const IntervalEnc& x);

Formula phi_empty(const IntervalEnc& x);
Formula phi_in(const LinTerm& v, const IntervalEnc& x);
Formula phi_subseteq(const IntervalEnc& x, const IntervalEnc& y);
Formula phi_eq(const IntervalEnc& x, const IntervalEnc& y);
/// k = msum(i, j) over flag terms.
Formula phi_msum(const LinTerm& i, const LinTerm& j, const LinTerm& k);
/// z = x + y (Minkowski sum).
Formula phi_plus(const IntervalEnc& x, const IntervalEnc& y, const IntervalEnc& z);
/// z = x intersected with y.
Formula phi_cap(const IntervalEnc& x, const IntervalEnc& y, const IntervalEnc& z);
/// x and y are empty, or their union is not an interval.
Formula phi_dis(const IntervalEnc& x, const IntervalEnc& y);
/// y = (x + (0,z]) cap g for z > 0, (x + [z,0)) cap g for z < 0, x cap g
/// for z = 0. A non-constant z is split on its sign inside the formula.
Formula phi_update(const IntervalEnc& x, const LinTerm& z, const IntervalEnc& g, const IntervalEnc& y);

Formula psi_in(const LinTerm& v, const EncVec& xs);
/// Every part of xs lies inside a single part of ys.
Formula psi_subseteq(const EncVec& xs, const EncVec& ys);
/// Nonempty parts pairwise separated: xs is a maximal decomposition up to
/// empty slots.
Formula psi_max(const EncVec& xs);
/// Nonempty parts in increasing order, pairwise apart, empty slots last.
/// Implies psi_max; every finite union has exactly one such layout.
Formula psi_sorted(const EncVec& xs);
/// The successor image of every part of xs through update z and guard g
/// lies inside a single part of ys. Needs no image variables.
Formula psi_update_within(const EncVec& xs, const LinTerm& z, const IntervalEnc& g, const EncVec& ys);
Formula psi_update(const EncVec& xs, const LinTerm& z, const IntervalEnc& g, const EncVec& ys);
Formula psi_domain(const EncVec& xs);

/// 4(|L|+1) with L the distinct guards.
std::size_t encoding_width(const ParametricCoca& p);

/// One copy of the candidate variables: n slots per state and per
/// transition image.
struct CandidateVars {
  std::vector<EncVec> states;
  std::vector<EncVec> images;

  std::vector<std::string> names() const;
};

/// State slots Ib_<state>_<i>..., image slots Tb_<k>_<i>...; every name
/// gets `suffix` appended.
CandidateVars candidate_vars(const ParametricCoca& p, std::size_t n, const std::string& suffix = "");

/// Pads with empty slots; throws Error if the set has more than n parts.
void assign_slots(Valuation& mu, const EncVec& slots, const IntervalSet& s);

/// images[k] is the successor image of the source slots through transition k.
Formula psi_succ(const ParametricCoca& p, const CandidateVars& v);
/// Flag domains, psi_succ, images included in their targets, maximal
/// decompositions, and a in slot set of `from`.
Formula psi_cand(const ParametricCoca& p, const CandidateVars& v, StateId from, const Rat& a);
/// The same property over state slots only: sorted layout and successor
/// images checked through psi_update_within.
Formula psi_cand_compact(const ParametricCoca& p, const std::vector<EncVec>& states, StateId from, const Rat& a);

/// exists params, I. forall I'. the least-candidate sentence: I is a
/// candidate containing b at `to`, and below every candidate I'. Uses
/// psi_cand_compact over state slots only.
Sentence build_sentence(const ParametricCoca& p, StateId from, const Rat& a, StateId to, const Rat& b,
                        std::optional<std::size_t> width = std::nullopt);

/// Purely existential encoding for acyclic automata: a path of at most
/// |Q|-1 steps chosen through state-index variables, with one interval per
/// step. Throws NotAcyclic.
Sentence encode_acyclic(const ParametricCoca& p, StateId from, const Rat& a, StateId to, const Rat& b);

bool is_acyclic(const ParametricCoca& p);

}  // namespace coca

#endif  // COCA_ENCODING_HPP
