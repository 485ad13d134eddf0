#include "coca/interval.hpp"

#include "coca/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace coca {

namespace {

// Order of lower bounds: a smaller value starts earlier; at equal values a
// closed bound starts earlier than an open one.
bool lower_before(const Interval& a, const Interval& b) {
  if (a.lo() != b.lo()) return a.lo() < b.lo();
  return a.lo_closed() && !b.lo_closed();
}

// Order of upper bounds: at equal values an open bound ends earlier.
bool upper_before(const Interval& a, const Interval& b) {
  if (a.hi() != b.hi()) return a.hi() < b.hi();
  return !a.hi_closed() && b.hi_closed();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Interval Interval::make(Ext lo, bool lo_closed, Ext hi, bool hi_closed) {
  if (!lo.is_finite()) lo_closed = false;
  if (!hi.is_finite()) hi_closed = false;
  if (lo.is_pos_inf() || hi.is_neg_inf()) return {};
  if (hi < lo) return {};
  if (lo == hi && !(lo_closed && hi_closed)) return {};
  Interval r;
  r.empty_ = false;
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  r.lo_closed_ = lo_closed;
  r.hi_closed_ = hi_closed;
  return r;
}

Interval Interval::parse(std::string_view text) {
  text = trim(text);
  if (text == "empty") return {};
  const auto fail = [&]() -> ParseError {
    return ParseError("invalid interval '" + std::string(text) + "'");
  };
  if (text.size() < 5) throw fail();
  const char open_c = text.front();
  const char close_c = text.back();
  if ((open_c != '(' && open_c != '[') || (close_c != ')' && close_c != ']')) throw fail();
  const auto body = text.substr(1, text.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) throw fail();
  Ext lo;
  Ext hi;
  try {
    lo = Ext::parse(body.substr(0, comma));
    hi = Ext::parse(body.substr(comma + 1));
  } catch (const ParseError&) {
    throw fail();
  }
  if ((lo.is_pos_inf()) || (hi.is_neg_inf())) throw fail();
  if ((!lo.is_finite() && open_c == '[') || (!hi.is_finite() && close_c == ']')) throw fail();
  return make(lo, open_c == '[', hi, close_c == ']');
}

bool Interval::contains(const Rat& x) const {
  if (empty_) return false;
  const Ext v(x);
  if (v < lo_ || (v == lo_ && !lo_closed_)) return false;
  if (hi_ < v || (v == hi_ && !hi_closed_)) return false;
  return true;
}

bool Interval::contains(const Interval& other) const {
  if (other.empty_) return true;
  if (empty_) return false;
  return !lower_before(other, *this) && !upper_before(*this, other);
}

bool Interval::closure_contains(const Rat& x) const {
  if (empty_) return false;
  const Ext v(x);
  return lo_ <= v && v <= hi_;
}

std::string Interval::str() const {
  if (empty_) return "empty";
  std::string s;
  s += lo_closed_ ? '[' : '(';
  s += lo_.str();
  s += ',';
  s += hi_.str();
  s += hi_closed_ ? ']' : ')';
  return s;
}

std::ostream& operator<<(std::ostream& os, const Interval& i) { return os << i.str(); }

Interval iv_intersect(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return {};
  const Interval& lower = lower_before(x, y) ? y : x;  // later-starting bound wins
  const Interval& upper = upper_before(x, y) ? x : y;  // earlier-ending bound wins
  return Interval::make(lower.lo(), lower.lo_closed(), upper.hi(), upper.hi_closed());
}

Interval iv_minkowski_update(const Interval& x, const Rat& z) {
  if (x.is_empty() || z.is_zero()) return x;
  if (z.sign() > 0) return Interval::make(x.lo(), false, x.hi() + z, x.hi_closed());
  return Interval::make(x.lo() + z, x.lo_closed(), x.hi(), false);
}

Interval iv_closure(const Interval& x) {
  if (x.is_empty()) return x;
  return Interval::make(x.lo(), true, x.hi(), true);
}

Interval iv_negate(const Interval& x) {
  if (x.is_empty()) return x;
  return Interval::make(-x.hi(), x.hi_closed(), -x.lo(), x.lo_closed());
}

bool iv_mergeable(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return true;
  const Interval& a = lower_before(y, x) ? y : x;
  const Interval& b = lower_before(y, x) ? x : y;
  if (b.lo() < a.hi()) return true;
  if (b.lo() == a.hi()) return a.hi_closed() || b.lo_closed();
  return false;
}

IntervalSet::IntervalSet(std::initializer_list<Interval> parts)
    : IntervalSet(from_parts(std::vector<Interval>(parts))) {}

IntervalSet::IntervalSet(const Interval& part) {
  if (!part.is_empty()) parts_.push_back(part);
}

IntervalSet IntervalSet::from_parts(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& i) { return i.is_empty(); });
  std::sort(parts.begin(), parts.end(), lower_before);
  IntervalSet out;
  for (auto& p : parts) {
    if (!out.parts_.empty() && iv_mergeable(out.parts_.back(), p)) {
      Interval& cur = out.parts_.back();
      if (upper_before(cur, p)) cur = Interval::make(cur.lo(), cur.lo_closed(), p.hi(), p.hi_closed());
    } else {
      out.parts_.push_back(std::move(p));
    }
  }
  return out;
}

IntervalSet IntervalSet::parse(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw ParseError("invalid interval set '" + std::string(text) + "'");
  }
  auto body = trim(text.substr(1, text.size() - 2));
  std::vector<Interval> parts;
  while (!body.empty()) {
    // Each part ends at its closing bracket.
    const auto end = body.find_first_of(")]");
    if (end == std::string_view::npos) throw ParseError("invalid interval set '" + std::string(text) + "'");
    parts.push_back(Interval::parse(body.substr(0, end + 1)));
    body = trim(body.substr(end + 1));
    if (!body.empty()) {
      if (body.front() != ',') throw ParseError("invalid interval set '" + std::string(text) + "'");
      body = trim(body.substr(1));
    }
  }
  return from_parts(std::move(parts));
}

std::size_t IntervalSet::find(const Rat& x) const {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].contains(x)) return i;
  }
  return npos;
}

std::string IntervalSet::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ", ";
    os << parts_[i];
  }
  os << '}';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntervalSet& s) { return os << s.str(); }

IntervalSet is_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> parts(a.parts().begin(), a.parts().end());
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return IntervalSet::from_parts(std::move(parts));
}

IntervalSet is_union(const IntervalSet& a, const Interval& b) { return is_union(a, IntervalSet(b)); }

IntervalSet is_minkowski_update(const IntervalSet& a, const Rat& z) {
  std::vector<Interval> parts;
  parts.reserve(a.size());
  for (const auto& p : a.parts()) parts.push_back(iv_minkowski_update(p, z));
  return IntervalSet::from_parts(std::move(parts));
}

IntervalSet is_intersect(const IntervalSet& a, const Interval& g) {
  std::vector<Interval> parts;
  for (const auto& p : a.parts()) parts.push_back(iv_intersect(p, g));
  return IntervalSet::from_parts(std::move(parts));
}

IntervalSet is_intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> parts;
  for (const auto& p : a.parts()) {
    for (const auto& q : b.parts()) parts.push_back(iv_intersect(p, q));
  }
  return IntervalSet::from_parts(std::move(parts));
}

IntervalSet is_difference(const IntervalSet& a, const IntervalSet& b) {
  // Complement of b as the gaps between its parts.
  std::vector<Interval> gaps;
  Ext lo = Ext::neg_inf();
  bool lo_closed = false;
  for (const auto& p : b.parts()) {
    gaps.push_back(Interval::make(lo, lo_closed, p.lo(), !p.lo_closed()));
    lo = p.hi();
    lo_closed = !p.hi_closed();
  }
  gaps.push_back(Interval::make(lo, lo_closed, Ext::pos_inf(), false));
  return is_intersect(a, IntervalSet::from_parts(std::move(gaps)));
}

bool is_contains(const IntervalSet& a, const Rat& x) { return a.find(x) != IntervalSet::npos; }

bool is_subset(const IntervalSet& a, const IntervalSet& b) {
  for (const auto& p : a.parts()) {
    const bool covered =
        std::any_of(b.parts().begin(), b.parts().end(), [&](const Interval& q) { return q.contains(p); });
    if (!covered) return false;
  }
  return true;
}

Rat representative(const Interval& x, bool prefer_upper) {
  if (x.is_empty()) throw Error("representative of an empty interval");
  const bool hi_ok = x.hi().is_finite() && x.hi_closed();
  const bool lo_ok = x.lo().is_finite() && x.lo_closed();
  if (prefer_upper && hi_ok) return x.hi().value();
  if (lo_ok) return x.lo().value();
  if (hi_ok) return x.hi().value();
  if (x.lo().is_finite() && x.hi().is_finite()) return (x.lo().value() + x.hi().value()) / Rat(2);
  if (x.lo().is_finite()) return x.lo().value() + Rat(1);
  if (x.hi().is_finite()) return x.hi().value() - Rat(1);
  return Rat(0);
}

}  // namespace coca
