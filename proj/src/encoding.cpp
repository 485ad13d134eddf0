#include "coca/encoding.hpp"

#include "coca/error.hpp"

#include <algorithm>
#include <set>

namespace coca {

namespace {

Formula is_flag(const LinTerm& f, int v) { return eq(f, LinTerm(v)); }
Formula finite(const LinTerm& f) { return ne(f, LinTerm(2)); }

int check_flag(const Rat& f) {
  for (int v : {0, 1, 2}) {
    if (f == Rat(v)) return v;
  }
  throw BadFlag("interval flag " + f.str() + " is not 0, 1 or 2");
}

// Lower (or upper) endpoint of x and y denote the same bound.
Formula same_lo(const IntervalEnc& x, const IntervalEnc& y) {
  return (is_flag(x.bot, 2) && is_flag(y.bot, 2)) || (finite(x.bot) && eq(x.bot, y.bot) && eq(x.b, y.b));
}

Formula same_hi(const IntervalEnc& x, const IntervalEnc& y) {
  return (is_flag(x.top, 2) && is_flag(y.top, 2)) || (finite(x.top) && eq(x.top, y.top) && eq(x.t, y.t));
}

// k = min(i, j) for closedness flags in {0,1}.
Formula flag_min(const LinTerm& i, const LinTerm& j, const LinTerm& k) {
  return (is_flag(i, 1) && is_flag(j, 1) && is_flag(k, 1)) ||
         ((is_flag(i, 0) || is_flag(j, 0)) && is_flag(k, 0));
}

// Nonempty x lies strictly left of nonempty y with no shared point.
Formula before(const IntervalEnc& x, const IntervalEnc& y) {
  return finite(x.top) && finite(y.bot) &&
         (lt(x.t, y.b) || (eq(x.t, y.b) && (is_flag(x.top, 0) || is_flag(y.bot, 0))));
}

// Nonempty x and y are apart and x sits left of y, leaving at least one
// point between them.
Formula apart(const IntervalEnc& x, const IntervalEnc& y) {
  return finite(x.top) && finite(y.bot) &&
         (lt(x.t, y.b) || (eq(x.t, y.b) && is_flag(x.top, 0) && is_flag(y.bot, 0)));
}

// z's lower endpoint is the larger of the lower endpoints of x and y.
Formula max_lo(const IntervalEnc& x, const IntervalEnc& y, const IntervalEnc& z) {
  const auto fx = finite(x.bot), fy = finite(y.bot);
  return Formula::any({
      is_flag(x.bot, 2) && is_flag(y.bot, 2) && is_flag(z.bot, 2),
      is_flag(x.bot, 2) && fy && same_lo(z, y),
      fx && is_flag(y.bot, 2) && same_lo(z, x),
      fx && fy && gt(x.b, y.b) && same_lo(z, x),
      fx && fy && lt(x.b, y.b) && same_lo(z, y),
      fx && fy && eq(x.b, y.b) && eq(z.b, x.b) && flag_min(x.bot, y.bot, z.bot),
  });
}

Formula min_hi(const IntervalEnc& x, const IntervalEnc& y, const IntervalEnc& z) {
  const auto fx = finite(x.top), fy = finite(y.top);
  return Formula::any({
      is_flag(x.top, 2) && is_flag(y.top, 2) && is_flag(z.top, 2),
      is_flag(x.top, 2) && fy && same_hi(z, y),
      fx && is_flag(y.top, 2) && same_hi(z, x),
      fx && fy && lt(x.t, y.t) && same_hi(z, x),
      fx && fy && gt(x.t, y.t) && same_hi(z, y),
      fx && fy && eq(x.t, y.t) && eq(z.t, x.t) && flag_min(x.top, y.top, z.top),
  });
}

// Encodings of x + (0,z] (positive) or x + [z,0) (negative) for nonempty
// x, each valid under its condition.
std::vector<std::pair<Formula, IntervalEnc>> shifted(const IntervalEnc& x, const LinTerm& z, bool positive) {
  if (positive) {
    return {{is_flag(x.bot, 2), {x.b, x.t + z, 2, x.top}}, {finite(x.bot), {x.b, x.t + z, 0, x.top}}};
  }
  return {{is_flag(x.top, 2), {x.b + z, x.t, x.bot, 2}}, {finite(x.top), {x.b + z, x.t, x.bot, 0}}};
}

Formula update_signed(const IntervalEnc& x, const LinTerm& z, const IntervalEnc& g, const IntervalEnc& y,
                      bool positive) {
  std::vector<Formula> alts;
  for (const auto& [cond, e] : shifted(x, z, positive)) alts.push_back(cond && phi_cap(e, g, y));
  return (phi_empty(x) && phi_empty(y)) || (!phi_empty(x) && Formula::any(std::move(alts)));
}

// Lower bound of y at or below that of x, in the order of bounds where an
// open bound sits just above the closed one at the same point.
Formula lo_covers(const IntervalEnc& y, const IntervalEnc& x) {
  return is_flag(y.bot, 2) ||
         (finite(x.bot) && (lt(y.b, x.b) || (eq(y.b, x.b) && (is_flag(y.bot, 1) || is_flag(x.bot, 0)))));
}

Formula hi_covers(const IntervalEnc& y, const IntervalEnc& x) {
  return is_flag(y.top, 2) ||
         (finite(x.top) && (lt(x.t, y.t) || (eq(x.t, y.t) && (is_flag(y.top, 1) || is_flag(x.top, 0)))));
}

// x cap g lies inside one of ys. The bound of an intersection is the
// tighter of the two, so y covers it iff y covers either one.
Formula cap_within(const IntervalEnc& x, const IntervalEnc& g, const EncVec& ys) {
  std::vector<Formula> some{phi_empty(x), phi_empty(g), before(x, g), before(g, x)};
  for (const auto& y : ys) {
    some.push_back((lo_covers(y, x) || lo_covers(y, g)) && (hi_covers(y, x) || hi_covers(y, g)));
  }
  return Formula::any(std::move(some));
}

Formula update_within(const IntervalEnc& x, const LinTerm& z, const IntervalEnc& g, const EncVec& ys, int sign) {
  if (sign == 0) return cap_within(x, g, ys);
  std::vector<Formula> alts{phi_empty(x)};
  for (const auto& [cond, e] : shifted(x, z, sign > 0)) alts.push_back(cond && cap_within(e, g, ys));
  return Formula::any(std::move(alts));
}

std::string slot_name(const std::string& base, std::size_t i, const std::string& suffix) {
  return base + "_" + std::to_string(i) + suffix;
}

}  // namespace

Interval enc_eval(const Rat& b, const Rat& t, const Rat& bot, const Rat& top) {
  const int lo = check_flag(bot), hi = check_flag(top);
  if (lo != 2 && hi != 2 && (b > t || (b == t && !(lo == 1 && hi == 1)))) return Interval::empty();
  return Interval::make(lo == 2 ? Ext::neg_inf() : Ext(b), lo == 1, hi == 2 ? Ext::pos_inf() : Ext(t), hi == 1);
}

Interval enc_value(const IntervalEnc& x, const Valuation& mu) {
  return enc_eval(x.b.eval(mu), x.t.eval(mu), x.bot.eval(mu), x.top.eval(mu));
}

int msum(int i, int j) {
  check_flag(i);
  check_flag(j);
  return std::max(i, j) == 2 ? 2 : std::min(i, j);
}

IntervalEnc enc_const(const Interval& iv) {
  if (iv.is_empty()) return {1, 0, 0, 0};
  IntervalEnc e;
  e.b = iv.lo().is_finite() ? LinTerm(iv.lo().value()) : LinTerm(0);
  e.t = iv.hi().is_finite() ? LinTerm(iv.hi().value()) : LinTerm(0);
  e.bot = iv.lo().is_finite() ? LinTerm(iv.lo_closed() ? 1 : 0) : LinTerm(2);
  e.top = iv.hi().is_finite() ? LinTerm(iv.hi_closed() ? 1 : 0) : LinTerm(2);
  return e;
}

IntervalEnc enc_guard(const ParamInterval& g) {
  const auto end = [](const ParamEnd& e, bool closed, LinTerm& value, LinTerm& flag) {
    if (const auto* x = std::get_if<std::string>(&e)) {
      value = LinTerm::var(param_var(*x));
      flag = closed ? 1 : 0;
      return;
    }
    const auto& v = std::get<Ext>(e);
    value = v.is_finite() ? LinTerm(v.value()) : LinTerm(0);
    flag = v.is_finite() ? (closed ? 1 : 0) : 2;
  };
  IntervalEnc e;
  end(g.lo, g.lo_closed, e.b, e.bot);
  end(g.hi, g.hi_closed, e.t, e.top);
  return e;
}

IntervalEnc enc_vars(const std::string& stem, const std::string& name) {
  return {LinTerm::var(stem + "b_" + name), LinTerm::var(stem + "t_" + name), LinTerm::var(stem + "bot_" + name),
          LinTerm::var(stem + "top_" + name)};
}

std::vector<std::string> enc_var_names(const IntervalEnc& x) {
  std::vector<std::string> out;
  for (const auto* t : {&x.b, &x.t, &x.bot, &x.top}) {
    for (const auto& [v, c] : t->coeffs()) out.push_back(v);
  }
  return out;
}

void enc_assign(Valuation& mu, const IntervalEnc& x, const Interval& value) {
  const auto c = enc_const(value);
  const std::pair<const LinTerm*, const LinTerm*> slots[] = {{&x.b, &c.b}, {&x.t, &c.t}, {&x.bot, &c.bot},
                                                              {&x.top, &c.top}};
  for (const auto& [var, val] : slots) {
    if (var->coeffs().size() != 1 || !var->constant().is_zero() || var->coeffs().begin()->second != Rat(1)) {
      throw Error("enc_assign needs an encoding made of bare variables");
    }
    mu[var->coeffs().begin()->first] = val->constant();
  }
}

std::string param_var(const std::string& param) { return "x_" + param; }

LinTerm update_term(const ParamUpdate& u) {
  if (const auto* x = std::get_if<std::string>(&u)) return LinTerm::var(param_var(*x));
  return std::get<Rat>(u);
}

Formula flag_domain(const LinTerm& f) { return is_flag(f, 0) || is_flag(f, 1) || is_flag(f, 2); }
Formula enc_domain(const IntervalEnc& x) { return flag_domain(x.bot) && flag_domain(x.top); }

Formula phi_empty(const IntervalEnc& x) {
  return finite(x.bot) && finite(x.top) &&
         (gt(x.b, x.t) || (eq(x.b, x.t) && !(is_flag(x.bot, 1) && is_flag(x.top, 1))));
}

Formula phi_in(const LinTerm& v, const IntervalEnc& x) {
  return (is_flag(x.bot, 2) || lt(x.b, v) || (eq(x.b, v) && is_flag(x.bot, 1))) &&
         (is_flag(x.top, 2) || lt(v, x.t) || (eq(v, x.t) && is_flag(x.top, 1)));
}

Formula phi_subseteq(const IntervalEnc& x, const IntervalEnc& y) {
  return phi_empty(x) || (!phi_empty(y) && lo_covers(y, x) && hi_covers(y, x));
}

Formula phi_eq(const IntervalEnc& x, const IntervalEnc& y) {
  return (phi_empty(x) && phi_empty(y)) || (!phi_empty(x) && !phi_empty(y) && same_lo(x, y) && same_hi(x, y));
}

Formula phi_msum(const LinTerm& i, const LinTerm& j, const LinTerm& k) {
  return (is_flag(k, 2) && (is_flag(i, 2) || is_flag(j, 2))) || (finite(i) && finite(j) && flag_min(i, j, k));
}

Formula phi_plus(const IntervalEnc& x, const IntervalEnc& y, const IntervalEnc& z) {
  const auto lo = phi_msum(x.bot, y.bot, z.bot) && (is_flag(z.bot, 2) || eq(z.b, x.b + y.b));
  const auto hi = phi_msum(x.top, y.top, z.top) && (is_flag(z.top, 2) || eq(z.t, x.t + y.t));
  return ((phi_empty(x) || phi_empty(y)) && phi_empty(z)) || (!phi_empty(x) && !phi_empty(y) && lo && hi);
}

Formula phi_cap(const IntervalEnc& x, const IntervalEnc& y, const IntervalEnc& z) {
  const auto disjoint = before(x, y) || before(y, x);
  return ((phi_empty(x) || phi_empty(y)) && phi_empty(z)) ||
         (!phi_empty(x) && !phi_empty(y) &&
          ((phi_empty(z) && disjoint) || (!phi_empty(z) && max_lo(x, y, z) && min_hi(x, y, z))));
}

Formula phi_dis(const IntervalEnc& x, const IntervalEnc& y) {
  return phi_empty(x) || phi_empty(y) || apart(x, y) || apart(y, x);
}

Formula phi_update(const IntervalEnc& x, const LinTerm& z, const IntervalEnc& g, const IntervalEnc& y) {
  const auto zero = phi_cap(x, g, y);
  if (z.is_constant()) {
    const int s = z.constant().sign();
    return s == 0 ? zero : update_signed(x, z, g, y, s > 0);
  }
  return (gt(z, 0) && update_signed(x, z, g, y, true)) || (lt(z, 0) && update_signed(x, z, g, y, false)) ||
         (eq(z, 0) && zero);
}

Formula psi_in(const LinTerm& v, const EncVec& xs) {
  std::vector<Formula> fs;
  for (const auto& x : xs) fs.push_back(phi_in(v, x));
  return Formula::any(std::move(fs));
}

Formula psi_subseteq(const EncVec& xs, const EncVec& ys) {
  std::vector<Formula> all;
  for (const auto& x : xs) {
    std::vector<Formula> some;
    for (const auto& y : ys) some.push_back(phi_subseteq(x, y));
    all.push_back(Formula::any(std::move(some)));
  }
  return Formula::all(std::move(all));
}

Formula psi_max(const EncVec& xs) {
  std::vector<Formula> fs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) fs.push_back(phi_dis(xs[i], xs[j]));
  }
  return Formula::all(std::move(fs));
}

Formula psi_sorted(const EncVec& xs) {
  std::vector<Formula> fs;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    fs.push_back(phi_empty(xs[i + 1]) || (!phi_empty(xs[i]) && apart(xs[i], xs[i + 1])));
  }
  return Formula::all(std::move(fs));
}

Formula psi_update_within(const EncVec& xs, const LinTerm& z, const IntervalEnc& g, const EncVec& ys) {
  std::vector<Formula> fs;
  for (const auto& x : xs) {
    if (z.is_constant()) {
      fs.push_back(update_within(x, z, g, ys, z.constant().sign()));
    } else {
      fs.push_back((gt(z, 0) && update_within(x, z, g, ys, 1)) || (lt(z, 0) && update_within(x, z, g, ys, -1)) ||
                   (eq(z, 0) && update_within(x, z, g, ys, 0)));
    }
  }
  return Formula::all(std::move(fs));
}

Formula psi_update(const EncVec& xs, const LinTerm& z, const IntervalEnc& g, const EncVec& ys) {
  std::vector<Formula> fs;
  for (std::size_t i = 0; i < xs.size(); ++i) fs.push_back(phi_update(xs[i], z, g, ys.at(i)));
  return Formula::all(std::move(fs));
}

Formula psi_domain(const EncVec& xs) {
  std::vector<Formula> fs;
  for (const auto& x : xs) fs.push_back(enc_domain(x));
  return Formula::all(std::move(fs));
}

std::size_t encoding_width(const ParametricCoca& p) {
  std::vector<ParamInterval> distinct;
  for (const auto& g : p.tau) {
    if (std::find(distinct.begin(), distinct.end(), g) == distinct.end()) distinct.push_back(g);
  }
  return 4 * (distinct.size() + 1);
}

std::vector<std::string> CandidateVars::names() const {
  std::vector<std::string> out;
  for (const auto* group : {&states, &images}) {
    for (const auto& slots : *group) {
      for (const auto& e : slots) {
        const auto n = enc_var_names(e);
        out.insert(out.end(), n.begin(), n.end());
      }
    }
  }
  return out;
}

CandidateVars candidate_vars(const ParametricCoca& p, std::size_t n, const std::string& suffix) {
  CandidateVars v;
  for (std::size_t q = 0; q < p.num_states(); ++q) {
    EncVec slots;
    for (std::size_t i = 0; i < n; ++i) slots.push_back(enc_vars("I", slot_name(p.states.name(q), i, suffix)));
    v.states.push_back(std::move(slots));
  }
  for (std::size_t k = 0; k < p.transitions.size(); ++k) {
    EncVec slots;
    for (std::size_t i = 0; i < n; ++i) slots.push_back(enc_vars("T", slot_name(std::to_string(k), i, suffix)));
    v.images.push_back(std::move(slots));
  }
  return v;
}

void assign_slots(Valuation& mu, const EncVec& slots, const IntervalSet& s) {
  if (s.size() > slots.size()) {
    throw Error("interval set with " + std::to_string(s.size()) + " parts does not fit " +
                std::to_string(slots.size()) + " slots");
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    enc_assign(mu, slots[i], i < s.size() ? s.parts()[i] : Interval::empty());
  }
}

Formula psi_succ(const ParametricCoca& p, const CandidateVars& v) {
  std::vector<Formula> fs;
  for (std::size_t k = 0; k < p.transitions.size(); ++k) {
    const auto& t = p.transitions[k];
    fs.push_back(psi_update(v.states[t.src], update_term(t.update), enc_guard(p.tau[t.dst]), v.images[k]));
  }
  return Formula::all(std::move(fs));
}

Formula psi_cand(const ParametricCoca& p, const CandidateVars& v, StateId from, const Rat& a) {
  std::vector<Formula> fs;
  for (const auto& slots : v.states) fs.push_back(psi_domain(slots) && psi_max(slots));
  for (const auto& slots : v.images) fs.push_back(psi_domain(slots));
  fs.push_back(psi_succ(p, v));
  for (std::size_t k = 0; k < p.transitions.size(); ++k) {
    fs.push_back(psi_subseteq(v.images[k], v.states[p.transitions[k].dst]));
  }
  fs.push_back(psi_in(a, v.states.at(from)));
  return Formula::all(std::move(fs));
}

Formula psi_cand_compact(const ParametricCoca& p, const std::vector<EncVec>& states, StateId from, const Rat& a) {
  std::vector<Formula> fs;
  for (const auto& slots : states) fs.push_back(psi_domain(slots) && psi_sorted(slots));
  for (const auto& t : p.transitions) {
    fs.push_back(psi_update_within(states[t.src], update_term(t.update), enc_guard(p.tau[t.dst]), states[t.dst]));
  }
  fs.push_back(psi_in(a, states.at(from)));
  return Formula::all(std::move(fs));
}

Sentence build_sentence(const ParametricCoca& p, StateId from, const Rat& a, StateId to, const Rat& b,
                        std::optional<std::size_t> width) {
  p.validate();
  const std::size_t n = width.value_or(encoding_width(p));
  auto least = candidate_vars(p, n);
  auto other = candidate_vars(p, n, "_u");
  least.images.clear();
  other.images.clear();
  std::vector<Formula> below;
  for (std::size_t q = 0; q < p.num_states(); ++q) below.push_back(psi_subseteq(least.states[q], other.states[q]));
  Sentence s;
  for (const auto& x : p.params) s.exists.push_back(param_var(x));
  const auto ys = least.names();
  s.exists.insert(s.exists.end(), ys.begin(), ys.end());
  s.forall = other.names();
  s.body = Formula::all({psi_cand_compact(p, least.states, from, a), phi_in(a, enc_guard(p.tau.at(from))),
                         psi_in(b, least.states.at(to)),
                         implies(psi_cand_compact(p, other.states, from, a), Formula::all(std::move(below)))});
  return s;
}

bool is_acyclic(const ParametricCoca& p) {
  std::vector<std::size_t> indeg(p.num_states(), 0);
  for (const auto& t : p.transitions) ++indeg[t.dst];
  std::vector<StateId> ready;
  for (StateId q = 0; q < p.num_states(); ++q) {
    if (indeg[q] == 0) ready.push_back(q);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const auto q = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& t : p.transitions) {
      if (t.src == q && --indeg[t.dst] == 0) ready.push_back(t.dst);
    }
  }
  return seen == p.num_states();
}

Sentence encode_acyclic(const ParametricCoca& p, StateId from, const Rat& a, StateId to, const Rat& b) {
  p.validate();
  if (!is_acyclic(p)) throw NotAcyclic("automaton has a cycle");
  const std::size_t m = p.num_states() - 1;
  const auto state = [](std::size_t k) { return LinTerm::var("S_" + std::to_string(k)); };
  const auto cur = [](std::size_t k) { return enc_vars("J", std::to_string(k)); };

  std::vector<Formula> fs;
  fs.push_back(phi_in(a, enc_guard(p.tau.at(from))));
  fs.push_back(eq(state(0), LinTerm(static_cast<long>(from))));
  fs.push_back(enc_domain(cur(0)) && phi_eq(cur(0), enc_const(Interval::point(a))));
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<Formula> dom, step;
    for (StateId q = 0; q < p.num_states(); ++q) dom.push_back(eq(state(k), LinTerm(static_cast<long>(q))));
    fs.push_back(Formula::any(std::move(dom)) && enc_domain(cur(k)));
    for (const auto& t : p.transitions) {
      step.push_back(eq(state(k - 1), LinTerm(static_cast<long>(t.src))) &&
                     eq(state(k), LinTerm(static_cast<long>(t.dst))) &&
                     phi_update(cur(k - 1), update_term(t.update), enc_guard(p.tau[t.dst]), cur(k)));
    }
    // Shorter paths idle for the remaining steps.
    step.push_back(eq(state(k), state(k - 1)) && phi_eq(cur(k), cur(k - 1)));
    fs.push_back(Formula::any(std::move(step)));
  }
  fs.push_back(eq(state(m), LinTerm(static_cast<long>(to))));
  fs.push_back(phi_in(b, cur(m)));
  auto s = existential(Formula::all(std::move(fs)));
  for (const auto& x : p.params) {
    if (std::find(s.exists.begin(), s.exists.end(), param_var(x)) == s.exists.end()) s.exists.push_back(param_var(x));
  }
  return s;
}

}  // namespace coca
