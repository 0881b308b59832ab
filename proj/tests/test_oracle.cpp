#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "metazeta/errors.hpp"
#include "metazeta/oracle.hpp"

using namespace metazeta;

namespace {

using Counts = std::vector<BigInt>;

Counts ints(std::initializer_list<int> xs) {
  Counts out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

Element id_of(const ConcreteGroup& g, std::uint64_t x, std::uint64_t y) {
  for (Element e = 0; e < g.order(); ++e) {
    auto c = g.coordinates(e);
    if (c.x == x && c.y == y && c.z == 0) return e;
  }
  FAIL("no such element");
  return 0;
}

// Brute force over all subsets is out of reach beyond tiny groups; instead check
// each subgroup independently and compare serial against parallel enumeration.
void check_closed(const ConcreteGroup& g, const Subgroup& s) {
  REQUIRE(s.members.contains(g.identity()));
  for (Element a : s.elements) {
    REQUIRE(s.members.contains(g.inverse(a)));
    for (Element b : s.elements) REQUIRE(s.members.contains(g.mul(a, b)));
  }
  REQUIRE(closure(g, s.generators) == s.members);
}

}  // namespace

TEST_CASE("build_group multiplication examples") {
  auto d8 = build_group(GroupParams::make(2, 2, 1, 3));
  CHECK(d8.order() == 8);
  Element a = id_of(d8, 1, 0), b = id_of(d8, 0, 1);
  CHECK(d8.mul(a, b) == id_of(d8, 1, 1));
  CHECK(d8.mul(b, a) == id_of(d8, 3, 1));
  CHECK(d8.element_order(a) == 4);
  CHECK(d8.exponent() == 4);
  CHECK_FALSE(d8.is_abelian());
  CHECK(build_group(GroupParams::make(3, 2, 2, 1)).is_abelian());
  CHECK(build_group(GroupParams::make(2, 3, 2, 1)).is_abelian());
}

TEST_CASE("build_group yields a group") {
  for (auto [p, m, n, k] : {std::tuple{2, 2, 1, 3}, {2, 3, 2, 5}, {3, 2, 1, 4}, {5, 1, 1, 1}}) {
    auto g = build_group(GroupParams::make(p, m, n, k));
    for (Element x = 0; x < g.order(); ++x) {
      REQUIRE(g.mul(x, g.inverse(x)) == g.identity());
      REQUIRE(g.mul(g.identity(), x) == x);
      for (Element y = 0; y < g.order(); ++y)
        for (Element z = 0; z < g.order(); z += 3)
          REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
    }
  }
}

TEST_CASE("build_group errors") {
  CHECK_THROWS_AS(build_group(GroupParams::make(3, 2, 1, 2)), InvalidArgument);
  Limits small;
  small.max_order = 64;
  CHECK_THROWS_AS(build_group(GroupParams::make(2, 5, 3, 1), small), ResourceLimit);
  CHECK_THROWS_AS(build_metacyclic(2, 2, 1, 0, 3), InvalidArgument);
}

TEST_CASE("enumerate_subgroups examples") {
  auto d8 = build_group(GroupParams::make(2, 2, 1, 3));
  auto s = enumerate_subgroups(d8);
  CHECK(s.size() == 10);
  CHECK(subgroup_counts(d8, s) == ints({1, 5, 3, 1}));
  auto v4 = build_group(GroupParams::make(2, 1, 1, 1));
  CHECK(enumerate_subgroups(v4).size() == 5);
  CHECK(subgroup_counts(v4) == ints({1, 3, 1}));
  auto q8 = build_metacyclic(2, 2, 1, 1, 3);
  CHECK(q8.order() == 8);
  CHECK(subgroup_counts(q8) == ints({1, 1, 3, 1}));
  CHECK(subgroup_counts(build_cyclic(2, 8)) == ints({1, 1, 1, 1}));
  CHECK(subgroup_counts(build_group(GroupParams::make(3, 2, 1, 4))) == ints({1, 4, 4, 1}));
}

TEST_CASE("subgroup_counts for (2,5,3,7) matches a hand-checked vector") {
  auto g = build_group(GroupParams::make(2, 5, 3, 7));
  CHECK(subgroup_counts(g) == ints({1, 3, 7, 39, 23, 15, 7, 3, 1}));
}

TEST_CASE("subgroups are closed and ordered canonically") {
  for (auto [p, m, n, k] : {std::tuple{2, 2, 2, 3}, {2, 3, 2, 5}, {3, 2, 1, 4}, {2, 4, 2, 7}}) {
    auto g = build_group(GroupParams::make(p, m, n, k));
    auto s = enumerate_subgroups(g);
    std::set<std::vector<Element>> seen;
    for (std::size_t i = 0; i < s.size(); ++i) {
      check_closed(g, s.subgroups[i]);
      REQUIRE(seen.insert(s.subgroups[i].elements).second);
      if (i > 0) {
        const auto& a = s.subgroups[i - 1];
        const auto& b = s.subgroups[i];
        REQUIRE(std::pair(a.order(), a.elements) < std::pair(b.order(), b.elements));
      }
    }
    CHECK(s.subgroups.front().order() == 1);
    CHECK(s.subgroups.back().order() == g.order());
  }
}

TEST_CASE("serial and parallel enumeration agree") {
  for (auto [p, m, n, k] : {std::tuple{2, 3, 3, 3}, {2, 5, 3, 7}, {3, 2, 2, 4}, {2, 4, 4, 5}}) {
    auto g = build_group(GroupParams::make(p, m, n, k));
    auto a = enumerate_subgroups(g);
    auto b = enumerate_subgroups_serial(g);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a.subgroups[i].elements == b.subgroups[i].elements);
  }
}

TEST_CASE("subgroup cap raises a resource limit") {
  Limits tight;
  tight.max_subgroups = 20;
  auto g = build_group(GroupParams::make(2, 5, 3, 7));
  CHECK_THROWS_AS(enumerate_subgroups(g, tight), ResourceLimit);
  CHECK_THROWS_AS(enumerate_subgroups_serial(g, tight), ResourceLimit);
}

TEST_CASE("closure and is_subgroup") {
  auto d8 = build_group(GroupParams::make(2, 2, 1, 3));
  Element a = id_of(d8, 1, 0), b = id_of(d8, 0, 1);
  CHECK(closure(d8, {a}).count() == 4);
  CHECK(closure(d8, {a, b}).count() == 8);
  CHECK(closure(d8, {}).count() == 1);
  ElementSet bogus(d8.order());
  bogus.insert(0);
  bogus.insert(a);
  CHECK_FALSE(is_subgroup(d8, bogus));
  CHECK(is_subgroup(d8, closure(d8, {b})));
}

TEST_CASE("omega profiles") {
  auto d8 = omega_profile(build_group(GroupParams::make(2, 2, 1, 3)));
  CHECK(d8.w == 0);
  CHECK(d8.r.count() == 1);
  CHECK(d8.omega_sizes[1] == 6);
  CHECK(d8.quotient.kind == QuotientShape::Kind::dihedral);
  CHECK(d8.quotient.c == 3);

  auto v4 = omega_profile(build_group(GroupParams::make(2, 1, 1, 1)));
  CHECK(v4.w == 1);
  CHECK(v4.r.count() == 4);
  CHECK(v4.quotient.kind == QuotientShape::Kind::trivial);

  auto z4z4 = omega_profile(build_group(GroupParams::make(2, 2, 2, 1)));
  CHECK(z4z4.w == 2);
  CHECK(z4z4.r.count() == 16);
  CHECK(z4z4.quotient.kind == QuotientShape::Kind::trivial);

  auto q8 = omega_profile(build_metacyclic(2, 2, 1, 1, 3));
  CHECK(q8.w == 0);
  CHECK(q8.quotient.kind == QuotientShape::Kind::quaternion);
}

TEST_CASE("detected shapes reproduce oracle counts") {
  std::vector<ConcreteGroup> groups = {
      build_group(GroupParams::make(2, 2, 1, 3)),  build_group(GroupParams::make(2, 3, 1, 3)),
      build_group(GroupParams::make(2, 3, 1, 7)),  build_metacyclic(2, 3, 1, 2, 7),
      build_cyclic(2, 16),                         build_group(GroupParams::make(2, 2, 2, 1)),
      build_group(GroupParams::make(2, 3, 1, 1)),  build_group(GroupParams::make(2, 3, 2, 5)),
      build_group(GroupParams::make(2, 4, 2, 1))};
  for (const auto& g : groups) {
    auto shape = detect_shape(omega_profile(g));
    REQUIRE(shape.has_value());
    INFO(g.name(), " ", to_string(*shape));
    if (std::holds_alternative<shape::MaximalClassQuotient>(*shape)) continue;
    CHECK(berkovich_counts(*shape) == subgroup_counts(g));
  }
}

TEST_CASE("cocycle census") {
  auto d8 = cocycle_subgroup_census(GroupParams::make(2, 2, 1, 3));
  CHECK(d8.at({0, 1}) == 4);
  for (auto [p, m, n, k] : {std::tuple{2, 3, 2, 3}, {3, 2, 1, 4}, {2, 5, 3, 7}}) {
    auto params = GroupParams::make(p, m, n, k);
    auto g = build_group(params);
    auto s = enumerate_subgroups(g);
    auto census = cocycle_subgroup_census(g, s);
    auto counts = subgroup_counts(g, s);
    for (unsigned i = 0; i <= params.m(); ++i) CHECK(census.at({i, 0}) == 1);
    for (unsigned t = 0; t < counts.size(); ++t) {
      BigInt total = 0;
      for (const auto& [key, c] : census)
        if (key.first + key.second == t) total += c;
      CHECK(total == counts[t]);
    }
  }
}

TEST_CASE("direct products") {
  auto d8 = build_group(GroupParams::make(2, 2, 1, 3));
  auto prod = direct_product(d8, 3);
  CHECK(prod.order() == 24);
  auto series = subgroup_series(enumerate_subgroups(prod));
  CHECK(series.at(6) == 5);
  CHECK(series.at(12) == 3);
  CHECK(series.at(24) == 1);
  auto same = direct_product(d8, 1);
  CHECK(same.order() == 8);
  CHECK(subgroup_counts(same) == subgroup_counts(d8));
  CHECK_THROWS_AS(direct_product(d8, 6), InvalidArgument);
  auto expected = dirichlet_multiply(subgroup_series(enumerate_subgroups(d8)),
                                     subgroup_series(enumerate_subgroups(build_cyclic(3, 3))));
  CHECK(series == expected);
}

TEST_CASE("json exports") {
  auto v4 = build_group(GroupParams::make(2, 1, 1, 1));
  auto j = v4.to_json();
  CHECK(j["order"] == 4);
  CHECK(j["table"].size() == 4);
  auto s = export_subgroups(enumerate_subgroups(v4));
  CHECK(s.size() == 5);
}
