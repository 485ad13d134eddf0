#include "coca/error.hpp"
#include "coca/interval.hpp"
#include "oracle_support.hpp"

#include <doctest.h>

#include <random>

using namespace coca;

namespace {

Interval iv(const char* s) { return Interval::parse(s); }
IntervalSet set(const char* s) { return IntervalSet::parse(s); }

}  // namespace

TEST_CASE("rationals parse and print exactly") {
  CHECK(Rat::parse("-10/4") == Rat(-5, 2));
  CHECK(Rat::parse("2.25") == Rat(9, 4));
  CHECK(Rat::parse("-.5") == Rat(-1, 2));
  CHECK(Rat::parse("7").str() == "7");
  CHECK(Rat(-7, 2).str() == "-7/2");
  CHECK_FALSE(Rat::try_parse("1/0"));
  CHECK_FALSE(Rat::try_parse("abc"));
  CHECK_FALSE(Rat::try_parse("1.2.3"));
  CHECK_THROWS_AS(Rat(1) / Rat(0), Error);
}

TEST_CASE("extended rationals order infinities around every finite value") {
  CHECK(Ext::neg_inf() < Ext(Rat(-1000000)));
  CHECK(Ext(Rat(1000000)) < Ext::pos_inf());
  CHECK(Ext::parse("inf") == Ext::pos_inf());
  CHECK((Ext::pos_inf() + Rat(-3)) == Ext::pos_inf());
  CHECK(-Ext::neg_inf() == Ext::pos_inf());
  CHECK_THROWS(Ext::pos_inf().value());
}

TEST_CASE("interval text round-trips") {
  for (const char* s : {"(2,4]", "[-5,15]", "(-inf,5)", "empty", "[3,3]", "(-inf,+inf)", "(1/2,7/3]"}) {
    CHECK(iv(s).str() == s);
  }
  CHECK(iv("[3, 3)").is_empty());
  CHECK(iv("(5,2]").is_empty());
  CHECK_THROWS_AS(iv("[-inf,3]"), ParseError);
  CHECK_THROWS_AS(iv("[1,2"), ParseError);
  CHECK_THROWS_AS(iv("[a,2]"), ParseError);
}

TEST_CASE("intersection") {
  CHECK(iv_intersect(iv("(2,4]"), iv("[4,10]")) == iv("[4,4]"));
  CHECK(iv_intersect(iv("[0,5)"), iv("[5,9]")).is_empty());
  CHECK(iv_intersect(iv("[-5,15]"), iv("(10,+inf)")) == iv("(10,15]"));
  CHECK(iv_intersect(iv("(0,3)"), iv("[0,3]")) == iv("(0,3)"));
}

TEST_CASE("half-open Minkowski update") {
  CHECK(iv_minkowski_update(iv("[0,5]"), 3) == iv("(0,8]"));
  CHECK(iv_minkowski_update(iv("[0,5]"), -2) == iv("[-2,5)"));
  CHECK(iv_minkowski_update(Interval::empty(), 4).is_empty());
  CHECK(iv_minkowski_update(iv("(1,2)"), 0) == iv("(1,2)"));
  CHECK(iv_minkowski_update(iv("[3,3]"), 2) == iv("(3,5]"));
  CHECK(iv_minkowski_update(iv("(-inf,1)"), 2) == iv("(-inf,3)"));
}

TEST_CASE("closure and negation") {
  CHECK(iv_closure(iv("(3,5)")) == iv("[3,5]"));
  CHECK(iv_closure(Interval::everything()) == Interval::everything());
  CHECK(iv_closure(Interval::empty()).is_empty());
  CHECK(iv_negate(iv("(2,4]")) == iv("[-4,-2)"));
}

TEST_CASE("canonical unions") {
  CHECK(is_union(set("{[3,4]}"), set("{(4,5), (5,+inf)}")) == set("{[3,5), (5,+inf)}"));
  CHECK(is_union(IntervalSet{}, IntervalSet{}).is_empty());
  const auto u = is_union(set("{[0,1)}"), set("{(1,2]}"));
  CHECK(u.size() == 2);
  CHECK_FALSE(is_contains(u, 1));
  CHECK(set("{[0,1], [1,2)}") == set("{[0,2)}"));
  CHECK(set("{[0,5], [1,2)}") == set("{[0,5]}"));
  CHECK(set("{}").str() == "{}");
}

TEST_CASE("lifted operations") {
  const auto s = is_intersect(is_minkowski_update(set("{[0,1], [3,4]}"), 1), iv("[0,2]"));
  CHECK(s == set("{(0,2]}"));
  CHECK_FALSE(is_contains(set("{[3,5), (5,+inf)}"), 5));
  CHECK(is_contains(set("{[3,5), (5,+inf)}"), 100));
  CHECK(is_difference(set("{[0,10]}"), set("{(2,3), [5,5]}")) == set("{[0,2], [3,5), (5,10]}"));
  CHECK(is_subset(set("{[1,2], (3,4)}"), set("{[0,5]}")));
  CHECK_FALSE(is_subset(set("{[0,5]}"), set("{[0,2), (2,5]}")));
}

TEST_CASE("representatives prefer closed endpoints") {
  CHECK(representative(iv("[1,4]")) == Rat(4));
  CHECK(representative(iv("[1,4]"), false) == Rat(1));
  CHECK(representative(iv("(1,4)")) == Rat(5, 2));
  CHECK(representative(iv("(1,+inf)")) == Rat(2));
  CHECK(iv("(1,4)").contains(representative(iv("(1,4)"))));
}

TEST_CASE("normalization agrees with membership on random inputs") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 300; ++round) {
    std::vector<Interval> parts;
    const int k = static_cast<int>(rng() % 5);
    for (int i = 0; i < k; ++i) parts.push_back(testing_ref::random_interval(rng, 6, 0.15));
    const auto once = IntervalSet::from_parts(parts);
    const auto twice = IntervalSet::from_parts(std::vector<Interval>(once.parts().begin(), once.parts().end()));
    CHECK(once == twice);
    for (const auto& x : testing_ref::probe_points(parts)) {
      bool in_parts = false;
      for (const auto& p : parts) in_parts = in_parts || testing_ref::member(p, x);
      CHECK(is_contains(once, x) == in_parts);
    }
    CHECK(testing_ref::is_maximal_decomposition(once));
  }
}

TEST_CASE("set operations agree with membership on random inputs") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    std::vector<Interval> pa, pb;
    for (int i = 0; i < 3; ++i) pa.push_back(testing_ref::random_interval(rng, 6, 0.15));
    for (int i = 0; i < 3; ++i) pb.push_back(testing_ref::random_interval(rng, 6, 0.15));
    const auto a = IntervalSet::from_parts(pa);
    const auto b = IntervalSet::from_parts(pb);
    const auto g = testing_ref::random_interval(rng, 6, 0.15);
    const Rat z(static_cast<long>(rng() % 7) - 3);
    std::vector<Interval> all = pa;
    all.insert(all.end(), pb.begin(), pb.end());
    all.push_back(g);
    for (auto& p : pa) all.push_back(iv_minkowski_update(p, z));
    const auto u = is_union(a, b);
    const auto i = is_intersect(a, b);
    const auto d = is_difference(a, b);
    const auto m = is_minkowski_update(a, z);
    const auto ig = is_intersect(a, g);
    for (const auto& x : testing_ref::probe_points(all)) {
      const bool ina = is_contains(a, x), inb = is_contains(b, x);
      CHECK(is_contains(u, x) == (ina || inb));
      CHECK(is_contains(i, x) == (ina && inb));
      CHECK(is_contains(d, x) == (ina && !inb));
      CHECK(is_contains(ig, x) == (ina && testing_ref::member(g, x)));
      CHECK(is_contains(m, x) == testing_ref::in_minkowski_update(a, z, x));
    }
    CHECK(is_subset(i, a));
    CHECK(testing_ref::no_three_closures_meet(u));
  }
}
