#include <optional>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mfrag/catalog.hpp"
#include "mfrag/connectivity.hpp"
#include "mfrag/matroid.hpp"
#include "mfrag/minor_analysis.hpp"

using namespace mfrag;

namespace {

Matroid apply_recipe(const Matroid& m, const MinorRecipe& r) {
  Matroid out = m;
  if (!r.contracted.empty()) out = contraction(out, r.contracted);
  if (!r.deleted.empty()) out = deletion(out, r.deleted);
  return out;
}

Matroid q_matroid() {
  Matroid m1 = relabel(catalog("U(2,4)"), {{"4", "p"}});
  Matroid m2 = relabel(catalog("U(2,4)"), {{"1", "p"}, {"2", "4"}, {"3", "5"}, {"4", "6"}});
  return two_sum(m1, m2, "p");
}

}  // namespace

TEST_CASE("has_minor finds the first recipe in enumeration order") {
  Matroid u24 = catalog("U(2,4)"), u25 = catalog("U(2,5)");
  auto r = has_minor(u25, u24);
  REQUIRE(r.has_value());
  CHECK(r->contracted.empty());
  CHECK(r->deleted == std::set<std::string>{"1"});
  CHECK(isomorphic(apply_recipe(u25, *r), u24).has_value());

  Matroid mk4 = catalog("MK4");
  auto self = has_minor(mk4, mk4);
  REQUIRE(self.has_value());
  CHECK(self->contracted.empty());
  CHECK(self->deleted.empty());

  auto w = has_minor(catalog("wheel(4)"), mk4);
  REQUIRE(w.has_value());
  CHECK(w->contracted == std::set<std::string>{"r1"});
  CHECK(w->deleted == std::set<std::string>{"s1"});
  CHECK(isomorphic(apply_recipe(catalog("wheel(4)"), *w), mk4).has_value());

  CHECK_FALSE(has_minor(catalog("F7"), u24).has_value());  // binary
  CHECK_FALSE(has_minor(u24, u25).has_value());
  CHECK(has_minor(catalog("whirl(3)"), u24).has_value());
}

TEST_CASE("classify_elements relative to a basis") {
  Matroid u25 = catalog("U(2,5)"), u24 = catalog("U(2,4)");
  auto cls = classify_elements(u25, u24, std::set<std::string>{"1", "2"});
  REQUIRE(cls.size() == 5);
  for (const auto& c : cls) {
    CHECK(c.deletable);
    CHECK_FALSE(c.contractible);  // U(2,5)/e has rank 1
    CHECK_FALSE(c.flexible);
    CHECK_FALSE(c.essential);
    bool in_b = c.element == "1" || c.element == "2";
    REQUIRE(c.robust.has_value());
    REQUIRE(c.strong.has_value());
    CHECK(*c.robust == !in_b);
    CHECK(*c.strong == !in_b);
  }
  auto plain = classify_elements(u25, u24);
  CHECK_FALSE(plain[0].robust.has_value());
  CHECK_FALSE(plain[0].strong.has_value());

  // In the rank-3 whirl, spokes are only deletable and rims only
  // contractible.
  auto wcls = classify_elements(catalog("whirl(3)"), u24);
  for (const auto& c : wcls) {
    bool spoke = c.element[0] == 's';
    CHECK(c.deletable == spoke);
    CHECK(c.contractible == !spoke);
  }

  CHECK(throws_code("NoNMinor", [&] { classify_elements(catalog("F7"), u24); }));
  CHECK(throws_code("NotABasis",
                    [&] { classify_elements(u25, u24, std::set<std::string>{"1", "2", "3"}); }));
}

TEST_CASE("fragility") {
  Matroid u24 = catalog("U(2,4)");
  CHECK(is_fragile(u24, u24));
  CHECK(is_strictly_fragile(u24, u24));
  CHECK(is_fragile(catalog("whirl(3)"), u24));
  CHECK(is_strictly_fragile(catalog("whirl(3)"), u24));
  CHECK(is_fragile(catalog("U(2,5)"), u24));
  // Vacuously fragile: no U(2,4)-minor at all.
  CHECK(is_fragile(catalog("MK4"), u24));
  CHECK_FALSE(is_strictly_fragile(catalog("MK4"), u24));
  // Wheels are fragile for the next smaller wheel: spokes only delete, rims
  // only contract.
  CHECK(is_fragile(catalog("wheel(4)"), catalog("MK4")));
  // Tiny minors are flexible everywhere.
  CHECK_FALSE(is_fragile(u24, catalog("U(1,2)")));
}

TEST_CASE("robust_basis_search") {
  Matroid u25 = catalog("U(2,5)"), u24 = catalog("U(2,4)");
  RobustBasisResult r = robust_basis_search(u25, u24, {"1", "2", std::nullopt});
  CHECK(r.basis == std::set<std::string>{"1", "2"});
  CHECK(r.robust_count == 3);
  CHECK(r.strong_outside == std::set<std::string>{"3", "4", "5"});

  // No basis contains a parallel pair.
  Matroid line5 = Matroid::from_bases(
      {"1", "2", "3", "4"}, {{"1", "3"}, {"1", "4"}, {"2", "3"}, {"2", "4"}, {"3", "4"}});
  CHECK(throws_code("NoBasisMeetsConstraints",
                    [&] { robust_basis_search(line5, catalog("U(2,3)"), {"1", "2", std::nullopt}); }));
  // U(2,5) has no triads.
  CHECK(throws_code("NoBasisMeetsConstraints",
                    [&] { robust_basis_search(u25, u24, {"1", "2", std::optional<std::string>("3")}); }));
  CHECK(throws_code("UnknownLabel", [&] { robust_basis_search(u25, u24, {"9", "2", std::nullopt}); }));
}

TEST_CASE("splitter_sequence removes one element at a time") {
  Matroid u24 = catalog("U(2,4)"), u25 = catalog("U(2,5)"), u26 = catalog("U(2,6)");
  auto sp = splitter_sequence(u26, u24);
  REQUIRE(sp.has_value());
  CHECK(sp->order == std::vector<std::string>{"1", "2"});
  CHECK(sp->recipe.deleted == std::set<std::string>{"1", "2"});
  CHECK(sp->recipe.contracted.empty());
  // Every prefix stays 3-connected with the minor.
  Matroid step = deletion(u26, {"1"});
  CHECK(is_3connected(step));
  CHECK(has_minor(step, u24).has_value());

  auto sp2 = splitter_sequence(u25, u24);
  REQUIRE(sp2.has_value());
  CHECK(sp2->order == std::vector<std::string>{"1"});
  auto same = splitter_sequence(u25, u25);
  REQUIRE(same.has_value());
  CHECK(same->order.empty());

  // Wheels, whirls, small or disconnected targets are rejected.
  CHECK(throws_code("PreconditionViolated",
                    [] { splitter_sequence(catalog("wheel(4)"), catalog("MK4")); }));
  CHECK(throws_code("PreconditionViolated",
                    [] { splitter_sequence(catalog("whirl(4)"), catalog("whirl(3)")); }));
  CHECK(throws_code("PreconditionViolated", [&] { splitter_sequence(u25, catalog("U(2,3)")); }));
  CHECK(throws_code("PreconditionViolated", [&] { splitter_sequence(q_matroid(), u24); }));
}

TEST_CASE("two_sum_part extracts a decomposition factor") {
  Matroid q = q_matroid();
  Matroid part = two_sum_part(q, {"1", "2", "3"}, "bp");
  CHECK(part.size() == 4);
  CHECK(part.rank() == 2);
  CHECK(isomorphic(part, catalog("U(2,4)")).has_value());
  Matroid other = two_sum_part(q, {"4", "5", "6"}, "bp");
  CHECK(same_labeled(two_sum(part, other, "bp"), q));

  CHECK(throws_code("DegenerateSide", [&] { two_sum_part(q, {}, "bp"); }));
  CHECK(throws_code("LabelCollision", [&] { two_sum_part(q, {"1", "2", "3"}, "1"); }));
}

TEST_CASE("n_stable") {
  Matroid u24 = catalog("U(2,4)");
  Matroid m1 = relabel(u24, {{"4", "p"}});
  Matroid t = two_sum(m1, relabel(catalog("U(2,3)"), {{"1", "p"}, {"2", "4"}, {"3", "5"}}), "p");
  NStableResult ok = n_stable(t, u24);
  CHECK(ok.stable);
  CHECK_FALSE(ok.witness.has_value());

  NStableResult bad = n_stable(q_matroid(), u24);
  CHECK_FALSE(bad.stable);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->side_x == std::set<std::string>{"1", "2", "3"});
  CHECK(bad.witness->side_y == std::set<std::string>{"4", "5", "6"});

  CHECK(throws_code("NNotApplicable", [&] { n_stable(q_matroid(), catalog("U(2,3)")); }));
  CHECK(throws_code("NoNMinor", [&] { n_stable(catalog("MK4"), u24); }));
}

TEST_CASE("unstable_series_pairs") {
  // Rank-2 five-point instance: f and g parallel, {s,t} a series pair of
  // M\e, and cl({s,t,e}) reaches both parallel points.
  Matroid m = Matroid::from_bases({"s", "t", "e", "f", "g"},
                                  {{"s", "t"}, {"s", "e"}, {"s", "f"}, {"s", "g"}, {"t", "e"},
                                   {"t", "f"}, {"t", "g"}, {"e", "f"}, {"e", "g"}});
  auto usp = unstable_series_pairs(m, "e", catalog("U(2,3)"));
  REQUIRE(usp.size() == 1);
  CHECK(usp[0] == std::set<std::string>{"s", "t"});

  // Two parallel lines: removing e leaves a loop after cosimplification.
  std::vector<std::set<std::string>> cross;
  for (const char* i : {"1", "2", "3"})
    for (const char* j : {"4", "5", "6"}) cross.push_back({i, j});
  Matroid twolines = Matroid::from_bases({"1", "2", "3", "4", "5", "6"}, cross);
  CHECK(throws_code("PreconditionViolated",
                    [&] { unstable_series_pairs(twolines, "6", catalog("U(2,3)")); }));
  CHECK(throws_code("PreconditionViolated",
                    [&] { unstable_series_pairs(m, "e", catalog("U(3,4)")); }));
  CHECK(throws_code("UnknownLabel", [&] { unstable_series_pairs(m, "zz", catalog("U(2,3)")); }));
}
