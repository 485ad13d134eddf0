#include "coca/guarded.hpp"

#include "coca/error.hpp"

#include <algorithm>
#include <sstream>

namespace coca {

namespace {

IntervalSet image(const GuardedCoca& w, const Transition& t, const IntervalSet& from) {
  return is_intersect(is_minkowski_update(from, t.update), w.tau[t.dst]);
}

std::size_t part_index(const IntervalSet& s, const Rat& x) { return s.find(x); }

// Values u with u + alpha*z = v for some alpha in (0,1].
Interval predecessor_window(const Rat& v, const Rat& z) {
  if (z.sign() > 0) return Interval::make(v - z, true, v, false);
  if (z.sign() < 0) return Interval::make(v, false, v - z, true);
  return Interval::point(v);
}

struct Traced {
  std::vector<Config> configs;  // index m: configuration at iterate m
  std::vector<Step> steps;      // steps[m-1] leads from configs[m-1] to configs[m]
};

// Follows a value that is new at the last iterate back to the first one.
std::optional<Traced> trace_back(const GuardedCoca& w, const std::vector<ReachMap>& h, StateId q, const Rat& v,
                                 bool prefer_top) {
  const std::size_t k = h.size() - 1;
  Traced tr;
  tr.configs.resize(k + 1);
  tr.steps.resize(k);
  tr.configs[k] = {q, v};
  for (std::size_t m = k; m >= 1; --m) {
    const Config cur = tr.configs[m];
    // Transitions into the current state, the recorded producer first.
    std::vector<std::size_t> order;
    const auto& cur_map = h[m];
    const std::size_t pi = part_index(cur_map[cur.state], cur.value);
    if (pi != IntervalSet::npos && cur_map.origin.size() > cur.state && cur_map.origin[cur.state].size() > pi) {
      if (const auto& t = cur_map.origin[cur.state][pi].transition) order.push_back(*t);
    }
    for (std::size_t i = 0; i < w.transitions.size(); ++i) {
      if (w.transitions[i].dst == cur.state && (order.empty() || order.front() != i)) order.push_back(i);
    }
    bool found = false;
    for (const auto ti : order) {
      const auto& t = w.transitions[ti];
      const auto cand = is_intersect(h[m - 1][t.src], predecessor_window(cur.value, t.update));
      if (cand.is_empty()) continue;
      const Interval& part = prefer_top ? cand.parts().back() : cand.parts().front();
      const Rat u = representative(part, prefer_top);
      tr.configs[m - 1] = {t.src, u};
      tr.steps[m - 1] = {t.update.is_zero() ? Rat(1) : (cur.value - u) / t.update, ti};
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return tr;
}

// Checks the defining clauses; returns I_0..I_n on success.
std::optional<std::vector<Interval>> cycle_parts(const std::vector<ReachMap>& s, const std::vector<Config>& cfg,
                                                 CycleSign sign) {
  const std::size_t n = cfg.size() - 1;
  if (cfg.empty() || n == 0 || s.size() != n + 1) return std::nullopt;
  if (cfg.front().state != cfg.back().state) return std::nullopt;
  const Rat effect = cfg.back().value - cfg.front().value;
  if (sign == CycleSign::Positive ? effect.sign() <= 0 : effect.sign() >= 0) return std::nullopt;
  std::vector<Interval> parts;
  for (std::size_t i = 0; i <= n; ++i) {
    const auto& set = s[i][cfg[i].state];
    const auto idx = set.find(cfg[i].value);
    if (idx == IntervalSet::npos) return std::nullopt;
    if (i >= 1 && is_contains(s[i - 1][cfg[i].state], cfg[i].value)) return std::nullopt;
    parts.push_back(set.parts()[idx]);
  }
  if (!parts.back().contains(parts.front())) return std::nullopt;
  for (std::size_t i = 1; i <= n; ++i) {
    const Interval* inner = nullptr;
    std::size_t count = 0;
    for (const auto& prev : s[i - 1][cfg[i].state].parts()) {
      if (parts[i].contains(prev)) {
        inner = &prev;
        ++count;
      }
    }
    if (count != 1) return std::nullopt;
    const Ext a(cfg[i].value);
    if (sign == CycleSign::Positive ? a < inner->hi() : inner->lo() < a) return std::nullopt;
  }
  return parts;
}

ReachMap apply_acceleration(const GuardedCoca& w, const ReachMap& s, const ExpandingCycle& c) {
  const std::size_t n = c.configs.size() - 1;
  std::size_t j = 1;
  Ext best = Ext::pos_inf();
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& g = w.tau[c.configs[i].state];
    const Ext d = c.sign == CycleSign::Positive ? g.hi() - c.configs[i].value : -g.lo() + c.configs[i].value;
    if (i == 1 || d < best) {
      best = d;
      j = i;
    }
  }
  const StateId pj = c.configs[j].state;
  const Rat& aj = c.configs[j].value;
  const Interval ray = c.sign == CycleSign::Positive ? Interval::make(aj, true, Ext::pos_inf(), false)
                                                     : Interval::make(Ext::neg_inf(), false, aj, true);
  ReachMap out = s;
  out.sets[pj] = is_union(is_union(s[pj], c.parts[j]), iv_intersect(w.tau[pj], ray));
  if (out.origin.size() > pj) out.origin[pj].assign(out.sets[pj].size(), PartOrigin{});
  return out;
}

}  // namespace

bool ReachMap::is_empty() const {
  return std::all_of(sets.begin(), sets.end(), [](const IntervalSet& s) { return s.is_empty(); });
}

bool ReachMap::leq(const ReachMap& other) const {
  if (other.size() != size()) return false;
  for (std::size_t q = 0; q < size(); ++q) {
    if (!is_subset(sets[q], other.sets[q])) return false;
  }
  return true;
}

std::size_t ReachMap::max_parts() const {
  std::size_t m = 0;
  for (const auto& s : sets) m = std::max(m, s.size());
  return m;
}

std::string ReachMap::str(const StateTable& names) const {
  std::ostringstream os;
  for (std::size_t q = 0; q < sets.size(); ++q) os << names.name(q) << ": " << sets[q] << '\n';
  return os.str();
}

ReachMap initial_map(const GuardedCoca& w, StateId p, const Rat& a) {
  ReachMap r(w.num_states());
  r.origin.resize(w.num_states());
  if (w.tau.at(p).contains(a)) {
    r.sets[p] = IntervalSet(Interval::point(a));
    r.origin[p].push_back(PartOrigin{});
  }
  return r;
}

ReachMap succ(const GuardedCoca& w, const ReachMap& r, std::size_t iteration) {
  const std::size_t n = w.num_states();
  std::vector<std::vector<Interval>> pieces(n);
  for (std::size_t q = 0; q < n; ++q) {
    const auto ps = r[q].parts();
    pieces[q].assign(ps.begin(), ps.end());
  }
  std::vector<IntervalSet> images(w.transitions.size());
  for (std::size_t i = 0; i < w.transitions.size(); ++i) {
    const auto& t = w.transitions[i];
    images[i] = image(w, t, r[t.src]);
    const auto ps = images[i].parts();
    pieces[t.dst].insert(pieces[t.dst].end(), ps.begin(), ps.end());
  }
  ReachMap out(n);
  out.origin.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    out.sets[q] = IntervalSet::from_parts(std::move(pieces[q]));
    for (const auto& part : out.sets[q].parts()) {
      // Unchanged parts keep their origin; new ones name a producer.
      const auto old = std::find(r[q].parts().begin(), r[q].parts().end(), part);
      if (old != r[q].parts().end()) {
        const auto idx = static_cast<std::size_t>(old - r[q].parts().begin());
        const bool tracked = r.origin.size() > q && r.origin[q].size() > idx;
        out.origin[q].push_back(tracked ? r.origin[q][idx] : PartOrigin{});
        continue;
      }
      PartOrigin o{std::nullopt, 0, iteration};
      for (std::size_t i = 0; i < w.transitions.size() && !o.transition; ++i) {
        const auto& t = w.transitions[i];
        if (t.dst != q) continue;
        for (std::size_t j = 0; j < r[t.src].size(); ++j) {
          const auto img = iv_intersect(iv_minkowski_update(r[t.src].parts()[j], t.update), w.tau[q]);
          if (!iv_intersect(img, part).is_empty() && !is_subset(IntervalSet(img), r[q])) {
            o.transition = i;
            o.source_part = j;
            break;
          }
        }
      }
      out.origin[q].push_back(o);
    }
  }
  return out;
}

ReachMap succ_pow(const GuardedCoca& w, const ReachMap& r0, std::size_t k) {
  ReachMap r = r0;
  for (std::size_t i = 1; i <= k; ++i) r = succ(w, r, i);
  return r;
}

CycleSearchResult find_expanding_cycle(const GuardedCoca& w, const ReachMap& s0, std::size_t budget,
                                       const ReachObserver& observer) {
  std::vector<ReachMap> h{s0};
  for (std::size_t step = 1; step <= budget; ++step) {
    ReachMap next = succ(w, h.back(), step);
    if (observer) observer(next, step, false);
    if (next == h.back()) return {true, std::move(next), std::nullopt};
    h.push_back(std::move(next));
    const std::size_t k = h.size() - 1;
    const ReachMap& cur = h[k];
    for (StateId q = 0; q < w.num_states(); ++q) {
      const auto fresh = is_difference(cur[q], h[k - 1][q]);
      for (const auto& d : fresh.parts()) {
        std::vector<Rat> cands;
        if (d.hi().is_finite() && d.hi_closed()) cands.push_back(d.hi().value());
        if (d.lo().is_finite() && d.lo_closed()) cands.push_back(d.lo().value());
        cands.push_back(representative(d, true));
        cands.push_back(representative(d, false));
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (const auto& v : cands) {
          for (const bool top : {true, false}) {
            const auto tr = trace_back(w, h, q, v, top);
            if (!tr) continue;
            for (std::size_t i = k; i-- > 0;) {
              if (tr->configs[i].state != q) continue;
              const Rat effect = v - tr->configs[i].value;
              if (effect.is_zero()) continue;
              ExpandingCycle c;
              c.sign = effect.sign() > 0 ? CycleSign::Positive : CycleSign::Negative;
              c.configs.assign(tr->configs.begin() + static_cast<std::ptrdiff_t>(i), tr->configs.end());
              c.iterates.assign(h.begin() + static_cast<std::ptrdiff_t>(i), h.end());
              auto parts = cycle_parts(c.iterates, c.configs, c.sign);
              if (!parts) continue;
              c.parts = std::move(*parts);
              c.run.start = c.configs.front().state;
              c.run.value = c.configs.front().value;
              c.run.steps.assign(tr->steps.begin() + static_cast<std::ptrdiff_t>(i), tr->steps.end());
              if (apply_acceleration(w, cur, c) == cur) continue;
              CycleSearchResult res{false, cur, std::move(c)};
              return res;
            }
          }
        }
      }
    }
  }
  throw BudgetExceeded("no fixpoint or usable cycle within " + std::to_string(budget) + " steps");
}

ReachMap accelerate(const GuardedCoca& w, const ReachMap& s, const ExpandingCycle& c) {
  const auto parts = cycle_parts(c.iterates, c.configs, c.sign);
  if (!parts || *parts != c.parts) throw InvalidCycle("expanding cycle fails its defining clauses");
  if (c.run.steps.size() + 1 != c.configs.size() || c.run.start != c.configs.front().state ||
      c.run.value != c.configs.front().value) {
    throw InvalidCycle("cycle run does not match its configurations");
  }
  const auto tr = run_trace(w, c.run);
  if (!tr.admissible || tr.configs != c.configs) throw InvalidCycle("cycle run is not admissible");
  if (!c.iterates.front().leq(s)) throw InvalidCycle("cycle base is not below the accelerated map");
  return apply_acceleration(w, s, c);
}

std::size_t default_budget(const GuardedCoca& w) {
  const std::size_t q = w.num_states();
  return 4 * q * 4 * (q + 1) * (w.transitions.size() + 1);
}

std::size_t acceleration_bound(const GuardedCoca& w) {
  const std::size_t q = w.num_states();
  return 5 * q * (2 * q + 2) + q;
}

ReachMap compute_reach(const GuardedCoca& w, StateId p, const Rat& a, const ReachOptions& opts) {
  w.validate();
  ReachMap s = initial_map(w, p, a);
  std::size_t total = 0;
  const ReachObserver relay = [&](const ReachMap& m, std::size_t, bool acc) {
    ++total;
    if (opts.observer) opts.observer(m, total, acc);
  };
  if (opts.observer) opts.observer(s, 0, false);
  const std::size_t budget = opts.budget.value_or(default_budget(w));
  const std::size_t bound = acceleration_bound(w);
  for (std::size_t accelerations = 0;;) {
    auto res = find_expanding_cycle(w, s, budget, relay);
    if (res.stabilized) return std::move(res.map);
    s = accelerate(w, res.map, *res.cycle);
    relay(s, 0, true);
    if (++accelerations > bound) {
      throw SafeguardTripped("more than " + std::to_string(bound) + " accelerations");
    }
  }
}

bool greach(const GuardedCoca& w, StateId p, const Rat& a, StateId q, const Rat& b) {
  return is_contains(compute_reach(w, p, a)[q], b);
}

}  // namespace coca
