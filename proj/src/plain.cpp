#include "coca/plain.hpp"

#include "coca/error.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace coca {

namespace {

// A path is summarised by a monitor state: whether a positive / negative
// update occurred, and the signs of the first and last nonzero update
// (0 none, 1 positive, 2 negative), packed as hp | hn<<1 | first<<2 | last<<4.
constexpr int kMonitor = 64;
constexpr int kEmptyMonitor = 0;

int monitor_step(int m, int sign) {
  if (sign == 0) return m;
  const int code = sign > 0 ? 1 : 2;
  int hp = m & 1, hn = (m >> 1) & 1, first = (m >> 2) & 3;
  (sign > 0 ? hp : hn) = 1;
  if (first == 0) first = code;
  return hp | (hn << 1) | (first << 2) | (code << 4);
}

bool monitor_accepts(int m, const PathConditions& c) {
  const bool hp = m & 1, hn = (m >> 1) & 1;
  const int first = (m >> 2) & 3, last = (m >> 4) & 3;
  if (c.dplus_nonzero && !hp) return false;
  if (c.dminus_nonzero && !hn) return false;
  if (c.dplus_zero && hp) return false;
  if (c.dminus_zero && hn) return false;
  if (c.first_pos && first != 1) return false;
  if (c.first_neg && first != 2) return false;
  if (c.last_pos && last != 1) return false;
  if (c.last_neg && last != 2) return false;
  return true;
}

// Where a sits in the global guard; decides which paths are enabled.
enum class Pos { Outside, Interior, Inf, Sup, Point };

Pos position(const Interval& tau, const Rat& a) {
  if (!tau.contains(a)) return Pos::Outside;
  const bool at_inf = tau.lo() == Ext(a);
  const bool at_sup = tau.hi() == Ext(a);
  if (at_inf && at_sup) return Pos::Point;
  if (at_inf) return Pos::Inf;
  if (at_sup) return Pos::Sup;
  return Pos::Interior;
}

PathConditions all_zero() {
  PathConditions c;
  c.dplus_zero = c.dminus_zero = true;
  return c;
}

// Enabled paths split into at most two condition sets whose union is the
// set of paths admitting some admissible run from a.
std::vector<PathConditions> enabled_sets(Pos pos) {
  switch (pos) {
    case Pos::Outside: return {};
    case Pos::Interior: return {PathConditions{}};
    case Pos::Point: return {all_zero()};
    case Pos::Inf: {
      PathConditions c;
      c.first_pos = true;
      return {c, all_zero()};
    }
    case Pos::Sup: {
      PathConditions c;
      c.first_neg = true;
      return {c, all_zero()};
    }
  }
  return {};
}

bool exists_enabled(const Graph& g, Pos pos, StateId p, StateId q) {
  for (const auto& c : enabled_sets(pos)) {
    if (cond_paths_exist(g, p, q, c)) return true;
  }
  return false;
}

Ext max_dplus_enabled(const Graph& g, Pos pos, StateId p, StateId q) {
  Ext best = Ext::neg_inf();
  for (const auto& c : enabled_sets(pos)) best = max(best, cond_paths_opt(g, p, q, c, Opt::Max, Weight::Plus));
  return best;
}

std::vector<std::vector<bool>> reachability(const Graph& g) {
  std::vector<std::vector<bool>> r(g.nodes, std::vector<bool>(g.nodes, false));
  for (StateId s = 0; s < g.nodes; ++s) {
    std::deque<StateId> work{s};
    r[s][s] = true;
    while (!work.empty()) {
      const StateId u = work.front();
      work.pop_front();
      for (const auto& e : g.edges) {
        if (e.src == u && !r[s][e.dst]) {
          r[s][e.dst] = true;
          work.push_back(e.dst);
        }
      }
    }
  }
  return r;
}

Coca mirror(const Coca& v) {
  Coca m = v;
  m.tau = iv_negate(v.tau);
  for (auto& t : m.transitions) t.update = -t.update;
  return m;
}

Ext upper_endpoint(const Coca& v, const Rat& a, StateId p, StateId q) {
  const Graph g = Graph::of(v);
  const Pos pos = position(v.tau, a);
  if (pos == Pos::Sup || pos == Pos::Point) return v.tau.hi();
  if (admissible_cycle(v, a, p, q, Sign::Positive)) return v.tau.hi();
  return min(v.tau.hi(), max_dplus_enabled(g, pos, p, q) + a);
}

// Whether the finite value c > a, with c the supremum of the closure, is
// reached exactly: some suffix from an intermediate state r only climbs,
// and the prefix to r brings the counter close enough to c.
bool upper_attained(const Coca& v, const Rat& a, StateId p, StateId q, const Rat& c) {
  if (!v.tau.contains(c)) return false;
  const Graph g = Graph::of(v);
  const Pos pos = position(v.tau, a);
  const Rat gap = c - a;
  PathConditions climbing;
  climbing.dplus_nonzero = climbing.dminus_zero = true;
  PathConditions nonneg;
  nonneg.dminus_zero = true;
  for (StateId r = 0; r < v.num_states(); ++r) {
    const Ext w = cond_paths_opt(g, r, q, climbing, Opt::Max, Weight::Plus);
    if (!w.is_finite()) continue;
    const Ext w1 = cond_paths_opt(g, p, r, nonneg, Opt::Max, Weight::Plus);
    if (w1.is_finite() && Ext(gap) <= w1 + w.value()) return true;
    const Ext w2 = max_dplus_enabled(g, pos, p, r);
    if (w2.is_finite() && Ext(gap) < w2 + w.value()) return true;
    if (admissible_cycle(v, a, p, r, Sign::Positive)) return true;
  }
  return false;
}

}  // namespace

void PathConditions::validate() const {
  if ((dplus_nonzero && dplus_zero) || (dminus_nonzero && dminus_zero) || (first_neg && first_pos) ||
      (last_neg && last_pos)) {
    throw Error("contradictory path conditions");
  }
}

bool cond_paths_exist(const Graph& g, StateId p, StateId q, const PathConditions& c) {
  c.validate();
  std::vector<bool> seen(g.nodes * kMonitor, false);
  std::deque<std::pair<StateId, int>> work{{p, kEmptyMonitor}};
  seen[p * kMonitor + kEmptyMonitor] = true;
  while (!work.empty()) {
    const auto [u, m] = work.front();
    work.pop_front();
    if (u == q && monitor_accepts(m, c)) return true;
    for (const auto& e : g.edges) {
      if (e.src != u) continue;
      const int m2 = monitor_step(m, e.update.sign());
      const std::size_t key = e.dst * kMonitor + static_cast<std::size_t>(m2);
      if (!seen[key]) {
        seen[key] = true;
        work.emplace_back(e.dst, m2);
      }
    }
  }
  return false;
}

Ext cond_paths_opt(const Graph& g, StateId p, StateId q, const PathConditions& c, Opt opt, Weight w,
                   std::optional<std::size_t> maxlen) {
  c.validate();
  const std::size_t len = maxlen.value_or(g.nodes);
  const bool maximize = opt == Opt::Max;
  const auto better = [&](const Rat& x, const Rat& y) { return maximize ? y < x : x < y; };
  std::vector<std::optional<Rat>> cur(g.nodes * kMonitor);
  cur[p * kMonitor + kEmptyMonitor] = Rat(0);
  Ext best = maximize ? Ext::neg_inf() : Ext::pos_inf();
  for (std::size_t step = 0;; ++step) {
    for (int m = 0; m < kMonitor; ++m) {
      const auto& val = cur[q * kMonitor + static_cast<std::size_t>(m)];
      if (val && monitor_accepts(m, c)) best = maximize ? max(best, Ext(*val)) : min(best, Ext(*val));
    }
    if (step == len) break;
    std::vector<std::optional<Rat>> next(g.nodes * kMonitor);
    for (const auto& e : g.edges) {
      const int s = e.update.sign();
      const Rat add = (w == Weight::Plus ? s > 0 : s < 0) ? e.update : Rat(0);
      for (int m = 0; m < kMonitor; ++m) {
        const auto& val = cur[e.src * kMonitor + static_cast<std::size_t>(m)];
        if (!val) continue;
        auto& slot = next[e.dst * kMonitor + static_cast<std::size_t>(monitor_step(m, s))];
        const Rat cand = *val + add;
        if (!slot || better(cand, *slot)) slot = cand;
      }
    }
    cur = std::move(next);
  }
  return best;
}

bool enab_test(const Coca& v, const Rat& a, StateId p, StateId q) {
  return exists_enabled(Graph::of(v), position(v.tau, a), p, q);
}

bool admissible_cycle(const Coca& v, const Rat& a, StateId p, StateId q, Sign sign) {
  const Graph g = Graph::of(v);
  const Pos pos = position(v.tau, a);
  if (pos == Pos::Outside) return false;
  const auto r = reachability(g);
  for (const auto& t : g.edges) {
    const int s = t.update.sign();
    if (s == 0 || (s > 0) != (sign == Sign::Positive)) continue;
    if (!r[t.src][q] || !r[t.dst][t.src]) continue;
    if (exists_enabled(g, pos, p, t.src)) return true;
  }
  return false;
}

Endpoints closure_endpoints(const Coca& v, const Rat& a, StateId p, StateId q) {
  if (!enab_test(v, a, p, q)) return {Ext::pos_inf(), Ext::neg_inf()};
  const Ext hi = upper_endpoint(v, a, p, q);
  const Ext lo = -upper_endpoint(mirror(v), -a, p, q);
  return {lo, hi};
}

bool a_in_post(const Coca& v, const Rat& a, StateId p, StateId q) {
  const Graph g = Graph::of(v);
  const Pos pos = position(v.tau, a);
  if (!exists_enabled(g, pos, p, q)) return false;
  if (cond_paths_exist(g, p, q, all_zero())) return true;
  PathConditions c;
  switch (pos) {
    case Pos::Interior: c.dplus_nonzero = c.dminus_nonzero = true; break;
    case Pos::Inf: c.first_pos = c.last_neg = true; break;
    case Pos::Sup: c.first_neg = c.last_pos = true; break;
    default: return false;
  }
  return cond_paths_exist(g, p, q, c);
}

Attained endpoint_membership(const Coca& v, const Rat& a, StateId p, StateId q) {
  const auto e = closure_endpoints(v, a, p, q);
  if (e.hi < e.lo) return {};
  if (e.lo == e.hi) return {true, true};
  Attained r;
  const auto side = [&](const Coca& w, const Rat& x, const Ext& end) {
    if (end == Ext(x)) return a_in_post(w, x, p, q);
    if (!end.is_finite()) return false;
    return upper_attained(w, x, p, q, end.value());
  };
  r.hi = side(v, a, e.hi);
  r.lo = side(mirror(v), -a, -e.lo);
  return r;
}

bool PostRepr::contains(const Rat& b) const {
  return closure.contains(b) && std::find(excluded.begin(), excluded.end(), b) == excluded.end();
}

IntervalSet PostRepr::as_set() const {
  std::vector<Interval> pts;
  for (const auto& x : excluded) pts.push_back(Interval::point(x));
  return is_difference(IntervalSet(closure), IntervalSet::from_parts(pts));
}

std::string PostRepr::str() const {
  std::ostringstream os;
  os << closure;
  if (!excluded.empty()) {
    os << " minus {";
    for (std::size_t i = 0; i < excluded.size(); ++i) os << (i ? ", " : "") << excluded[i];
    os << '}';
  }
  return os.str();
}

PostRepr post_repr(const Coca& v, const Rat& a, StateId p, StateId q) {
  PostRepr r;
  const auto e = closure_endpoints(v, a, p, q);
  if (e.hi < e.lo) return r;
  r.closure = Interval::closed(e.lo, e.hi);
  const auto att = endpoint_membership(v, a, p, q);
  if (e.lo.is_finite() && !att.lo) r.excluded.push_back(e.lo.value());
  if (Ext(a) != e.lo && Ext(a) != e.hi && !a_in_post(v, a, p, q)) r.excluded.push_back(a);
  if (e.hi.is_finite() && e.hi != e.lo && !att.hi) r.excluded.push_back(e.hi.value());
  return r;
}

bool reach(const Coca& v, StateId p, const Rat& a, StateId q, const Rat& b) {
  return post_repr(v, a, p, q).contains(b);
}

bool eq_reach(const EqCoca& v, StateId p, const Rat& a, StateId q, const Rat& b) {
  v.validate();
  const Coca& base = v.base;
  const auto admits = [&](StateId s, const Rat& x) { return base.tau.contains(x) && (!v.phi[s] || *v.phi[s] == x); };
  if (!admits(p, a) || !admits(q, b)) return false;

  // Fresh source and sink, unconstrained, linked by zero updates.
  Coca ext = base;
  const StateId src = ext.add_state("\x01src");
  const StateId snk = ext.add_state("\x01snk");
  ext.add_transition(src, 0, p);
  ext.add_transition(q, 0, snk);
  const auto tested = [&](StateId s) { return s < v.phi.size() && v.phi[s].has_value(); };

  struct Node {
    StateId state;
    Rat value;
  };
  std::vector<Node> nodes{{src, a}, {snk, b}};
  for (StateId s = 0; s < base.num_states(); ++s) {
    if (tested(s) && base.tau.contains(*v.phi[s])) nodes.push_back({s, *v.phi[s]});
  }

  // Edge u(x) -> w(y): reach inside the automaton restricted to untested
  // states plus u and w, where u is only left and w only entered.
  const auto edge = [&](const Node& u, const Node& w) {
    Coca sub;
    sub.states = ext.states;
    sub.tau = ext.tau;
    const auto allowed = [&](StateId s) { return !tested(s) || s == u.state || s == w.state; };
    for (const auto& t : ext.transitions) {
      if (allowed(t.src) && allowed(t.dst) && t.src != w.state && t.dst != u.state) sub.transitions.push_back(t);
    }
    return reach(sub, u.state, u.value, w.state, w.value);
  };

  std::vector<bool> seen(nodes.size(), false);
  std::deque<std::size_t> work{0};
  seen[0] = true;
  while (!work.empty()) {
    const auto i = work.front();
    work.pop_front();
    if (i == 1) return true;
    for (std::size_t j = 1; j < nodes.size(); ++j) {
      if (!seen[j] && j != i && edge(nodes[i], nodes[j])) {
        seen[j] = true;
        work.push_back(j);
      }
    }
  }
  return false;
}

}  // namespace coca
