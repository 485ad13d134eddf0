// Rational intervals with open/closed/infinite endpoints, and canonical
// finite unions of them.
//
// Interval values are canonical: any description of the empty set becomes
// Interval::empty(), infinite endpoints are always open, and a degenerate
// interval [x,x] is always closed on both sides. Structural equality is
// therefore set equality.
//
// IntervalSet stores the unique decomposition of its union into maximal
// disjoint nonempty intervals, sorted by position. Two neighbours either
// have a gap between them or share a boundary point that neither contains,
// as in {[1,4), (4,5]}.

#ifndef COCA_INTERVAL_HPP
#define COCA_INTERVAL_HPP

#include "coca/rational.hpp"

#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coca {

class Interval {
public:
  /// The empty interval.
  Interval() = default;

  /// Normalizing constructor; returns Empty when the arguments denote the
  /// empty set. Closed flags on infinite endpoints are ignored.
  static Interval make(Ext lo, bool lo_closed, Ext hi, bool hi_closed);
  static Interval closed(Ext lo, Ext hi) { return make(std::move(lo), true, std::move(hi), true); }
  static Interval open(Ext lo, Ext hi) { return make(std::move(lo), false, std::move(hi), false); }
  static Interval point(const Rat& v) { return closed(v, v); }
  static Interval empty() { return {}; }
  static Interval everything() { return open(Ext::neg_inf(), Ext::pos_inf()); }

  /// "(2,4]", "[-5,15]", "(-inf,5)", "empty".
  static Interval parse(std::string_view text);

  bool is_empty() const { return empty_; }
  /// Endpoints; unspecified when empty.
  const Ext& lo() const { return lo_; }
  const Ext& hi() const { return hi_; }
  bool lo_closed() const { return lo_closed_; }
  bool hi_closed() const { return hi_closed_; }
  bool is_point() const { return !empty_ && lo_ == hi_; }
  bool is_bounded() const { return !empty_ && lo_.is_finite() && hi_.is_finite(); }

  bool contains(const Rat& x) const;
  bool contains(const Interval& other) const;
  /// True when the closure of this interval contains x.
  bool closure_contains(const Rat& x) const;

  std::string str() const;

  friend bool operator==(const Interval&, const Interval&) = default;

private:
  bool empty_ = true;
  Ext lo_{0};
  Ext hi_{0};
  bool lo_closed_ = false;
  bool hi_closed_ = false;
};

std::ostream& operator<<(std::ostream& os, const Interval& i);

Interval iv_intersect(const Interval& x, const Interval& y);

/// x + (0,z] for z > 0, x + [z,0) for z < 0, x for z = 0.
Interval iv_minkowski_update(const Interval& x, const Rat& z);

/// Smallest closed interval containing x.
Interval iv_closure(const Interval& x);

/// The interval mirrored through 0: {-v | v in x}.
Interval iv_negate(const Interval& x);

/// True when x ∪ y is a single interval (they overlap or touch at a point
/// contained in one of them).
bool iv_mergeable(const Interval& x, const Interval& y);

class IntervalSet {
public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> parts);
  explicit IntervalSet(const Interval& part);

  /// Canonical decomposition of the union of arbitrary intervals.
  static IntervalSet from_parts(std::vector<Interval> parts);

  /// "{[3,5), (5,+inf)}" or "{}".
  static IntervalSet parse(std::string_view text);

  std::span<const Interval> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool is_empty() const { return parts_.empty(); }

  /// Index of the part containing x, or npos.
  std::size_t find(const Rat& x) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::string str() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
  std::vector<Interval> parts_;
};

std::ostream& operator<<(std::ostream& os, const IntervalSet& s);

IntervalSet is_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet is_union(const IntervalSet& a, const Interval& b);
IntervalSet is_minkowski_update(const IntervalSet& a, const Rat& z);
IntervalSet is_intersect(const IntervalSet& a, const Interval& g);
IntervalSet is_intersect(const IntervalSet& a, const IntervalSet& b);
/// a \ b.
IntervalSet is_difference(const IntervalSet& a, const IntervalSet& b);
bool is_contains(const IntervalSet& a, const Rat& x);
bool is_subset(const IntervalSet& a, const IntervalSet& b);

/// A rational inside a nonempty interval, preferring closed finite
/// endpoints (upper first when prefer_upper) and otherwise a midpoint.
Rat representative(const Interval& x, bool prefer_upper = true);

}  // namespace coca

#endif  // COCA_INTERVAL_HPP
