#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mfrag/catalog.hpp"
#include "mfrag/connectivity.hpp"
#include "mfrag/matroid.hpp"
#include "mfrag/partial_field.hpp"
#include "mfrag/pmatrix.hpp"

using namespace mfrag;

namespace {

// Nine points of rank 4 over GF(3): 1,2,5,6 a basis; 3 = 1+2+5, 4 = 1+2·2+5,
// 7 = 5+6, 8 = 1+2+6, 9 = 1+2+5+6.  Point 5 sits on two crossing vertical
// 3-separations, one of whose far sides is z-closed.
Matroid nine_point() {
  PartialField f3 = PartialField::make("GF(3)");
  auto e = [&](int v) { return f3.from_int(v); };
  PMatrix a(f3, {"1", "2", "5", "6"}, {"3", "4", "7", "8", "9"},
            {e(1), e(1), e(0), e(1), e(1),
             e(1), e(2), e(0), e(1), e(1),
             e(1), e(1), e(1), e(0), e(1),
             e(0), e(0), e(1), e(1), e(1)});
  return matroid_from_pmatrix(a);
}

// Seven points of rank 3 over GF(5): the line {4,5,6} is z-closed for the
// free point 7 = 4+5+1 (with 1,2,3,7 a four-point circuit off the line).
Matroid seven_point() {
  PartialField f5 = PartialField::make("GF(5)");
  auto e = [&](int v) { return f5.from_int(v); };
  PMatrix a(f5, {"1", "4", "5"}, {"2", "3", "6", "7"},
            {e(1), e(1), e(0), e(1),
             e(1), e(0), e(1), e(1),
             e(0), e(1), e(1), e(1)});
  return matroid_from_pmatrix(a);
}

Matroid two_sum_of_lines() {
  Matroid m1 = relabel(catalog("U(2,4)"), {{"4", "p"}});
  Matroid m2 = relabel(catalog("U(2,4)"), {{"1", "p"}, {"2", "4"}, {"3", "5"}, {"4", "6"}});
  return two_sum(m1, m2, "p");
}

}  // namespace

TEST_CASE("lambda and connectivity predicates") {
  Matroid u25 = catalog("U(2,5)");
  CHECK(lambda(u25, {"1"}) == 1);
  CHECK(lambda(u25, {"1", "2"}) == 2);
  CHECK(throws_code("DegenerateSide", [&] { lambda(u25, {}); }));
  CHECK(throws_code("DegenerateSide", [&] { lambda(u25, {"1", "2", "3", "4", "5"}); }));

  CHECK(is_connected(u25));
  CHECK(is_3connected(u25));
  CHECK(is_3connected(catalog("wheel(4)")));
  CHECK(is_3connected(catalog("U(2,4)")));
  // U(3,4) = dual of U(1,4) splits 2|2 with connectivity 1.
  CHECK_FALSE(is_3connected(catalog("U(3,4)")));
  // Small ground sets cannot host a 2-separation with both sides of size 2.
  CHECK(is_3connected(catalog("U(1,2)")));
  CHECK(is_3connected(catalog("U(1,3)")));
  CHECK(is_3connected(catalog("U(2,3)")));

  Matroid s = two_sum_of_lines();
  CHECK(is_connected(s));
  CHECK_FALSE(is_3connected(s));
  Matroid loopy = Matroid::from_bases({"a", "b"}, {{"a"}});
  CHECK_FALSE(is_connected(loopy));
}

TEST_CASE("separations are canonical and ordered") {
  auto seps = separations(catalog("U(2,5)"), 2, 1);
  REQUIRE(seps.size() == 5);
  CHECK(seps[0].side_x == std::set<std::string>{"1"});
  CHECK(seps[4].side_x == std::set<std::string>{"5"});
  for (const auto& r : seps) {
    CHECK(r.lambda == 1);
    CHECK(r.side_x.size() <= r.side_y.size());
    CHECK_FALSE(r.middle.has_value());
  }

  auto two = separations(two_sum_of_lines(), 2, 2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].side_x == std::set<std::string>{"1", "2", "3"});
  CHECK(two[0].side_y == std::set<std::string>{"4", "5", "6"});
  CHECK(two[0].exact);
}

TEST_CASE("vertical 3-separations through a point") {
  Matroid m = nine_point();
  CHECK(m.size() == 9);
  CHECK(m.rank() == 4);
  CHECK(m.bases().size() == 89);
  CHECK(is_3connected(m));

  auto recs = vertical_3seps_through(m, "5");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].side_x == std::set<std::string>{"1", "2", "4"});
  CHECK(recs[0].side_y == std::set<std::string>{"3", "6", "7", "8", "9"});
  CHECK(recs[0].middle == std::optional<std::string>("5"));
  CHECK(recs[0].lambda == 2);
  CHECK(recs[0].exact);
  CHECK(recs[0].vertical);
  CHECK(recs[0].z_closed_y);
  CHECK(recs[0].guts == std::set<std::string>{"3", "5"});
  CHECK(recs[0].coguts.empty());
  CHECK(recs[1].side_x == std::set<std::string>{"1", "2", "3", "4"});
  CHECK(recs[1].side_y == std::set<std::string>{"6", "7", "8", "9"});
  CHECK_FALSE(recs[1].z_closed_y);

  // Empty exactly when si(M/z) is 3-connected.
  for (const char* name : {"wheel(4)", "whirl(3)"}) {
    Matroid w = catalog(name);
    for (const auto& z : w.ground()) {
      bool have = !vertical_3seps_through(w, z).empty();
      SimplificationResult si = simplify(contraction(w, {z}));
      CHECK(have == !is_3connected(si.m));
    }
  }
  CHECK(throws_code("Not3Connected", [] { vertical_3seps_through(two_sum_of_lines(), "1"); }));
}

TEST_CASE("closure membership flags and fcl") {
  Matroid m = nine_point();
  ClosureFlags f = cl_or_clstar_membership(m, {"1", "2", "4"}, "5");
  CHECK(f.in_cl);
  CHECK_FALSE(f.in_clstar);

  for (uint32_t s : subsets_in_order(m.full_mask())) {
    if (__builtin_popcount(s) > 3) continue;
    std::set<std::string> a = m.labels_of(s);
    std::set<std::string> g = fcl(m, a);
    uint32_t gm = m.mask_of(g);
    CHECK((m.closure_of(gm) == gm));
    CHECK((m.coclosure_of(gm) == gm));
    CHECK(std::includes(g.begin(), g.end(), a.begin(), a.end()));
  }
}

TEST_CASE("z-closed sides") {
  Matroid m7 = seven_point();
  CHECK(m7.rank() == 3);
  CHECK(is_3connected(m7));
  CHECK(is_z_closed(m7, "7", {"4", "5", "6"}));
  CHECK_FALSE(is_z_closed(m7, "7", {"1", "2", "3"}));

  Matroid m = nine_point();
  CHECK(is_z_closed(m, "5", {"3", "6", "7", "8", "9"}));
  CHECK_FALSE(is_z_closed(m, "5", {"6", "7", "8", "9"}));
  CHECK_FALSE(is_z_closed(m, "5", {"5", "6", "7"}));
}

TEST_CASE("z_closed_separation grows a z-closed far side") {
  Matroid m = nine_point();
  SeparationRecord r = z_closed_separation(m, "5", {"1", "2", "4", "9"});
  CHECK(r.side_x == std::set<std::string>{"1", "2", "4"});
  CHECK(r.middle == std::optional<std::string>("5"));
  CHECK(r.side_y == std::set<std::string>{"3", "6", "7", "8", "9"});
  CHECK(r.lambda == 2);
  CHECK(r.exact);
  CHECK(r.vertical);
  CHECK(r.z_closed_y);
  CHECK(r.guts == std::set<std::string>{"3", "5"});
  CHECK(r.coguts.empty());

  // si(M(K4)/e) is a triangle, so no vertical 3-separation exists.
  CHECK(throws_code("NoVerticalSeparation",
                    [] { z_closed_separation(catalog("MK4"), "12", {}); }));
}

TEST_CASE("fans") {
  Matroid mk4 = catalog("MK4");
  auto fs = fans(mk4);
  CHECK(fs.size() == 24);
  bool found = false;
  for (const auto& f : fs) {
    CHECK(f.ordering.size() == 6);
    CHECK(f.maximal);
    CHECK(is_fan(mk4, f.ordering));
    CHECK(is_maximal_fan(mk4, f.ordering));
    if (f.ordering == std::vector<std::string>{"12", "13", "23", "34", "24", "14"}) {
      found = true;
      CHECK(f.starts_with_triangle);
    }
  }
  CHECK(found);

  auto ws = fans(catalog("whirl(3)"));
  CHECK(ws.size() == 12);
  int len4 = 0, len6 = 0;
  for (const auto& f : ws) {
    if (f.ordering.size() == 4) ++len4;
    if (f.ordering.size() == 6) ++len6;
    CHECK_FALSE(f.starts_with_triangle);  // whirl fans start on rim triads
  }
  CHECK(len4 == 6);
  CHECK(len6 == 6);

  Matroid w4 = catalog("wheel(4)");
  auto w4s = fans(w4);
  CHECK(w4s.size() == 16);
  bool full = false;
  for (const auto& f : w4s) {
    // Lexicographically smaller end first.
    CHECK_FALSE(f.ordering.back() < f.ordering.front());
    if (f.ordering == std::vector<std::string>{"r1", "s1", "r4", "s4", "r3", "s3", "r2", "s2"})
      full = true;
  }
  CHECK(full);
  CHECK(is_fan(w4, {"s1", "r1", "s2", "r2"}));
  CHECK_FALSE(is_maximal_fan(w4, {"s1", "r1", "s2", "r2"}));
  CHECK_FALSE(is_fan(w4, {"s1", "r2", "s3", "r4"}));
}

TEST_CASE("fan type and fan ends") {
  FanRecord f;
  f.ordering = {"s1", "r1", "s2", "r2"};
  f.starts_with_triangle = true;
  auto t1 = fan_type(f, {"s1", "s2", "s3", "s4"});
  REQUIRE(t1.has_value());
  CHECK(*t1 == FanType::I);
  auto t2 = fan_type(f, {"s1", "s2", "r2", "s4"});
  REQUIRE(t2.has_value());
  CHECK(*t2 == FanType::II);

  Matroid w4 = catalog("wheel(4)");
  FanRecord full8;
  full8.ordering = {"s1", "r1", "s2", "r2", "s3", "r3", "s4", "r4"};
  full8.starts_with_triangle = true;
  CHECK(fan_end_kind(w4, full8, "s1") == FanEnd::Spoke);
  CHECK(fan_end_kind(w4, full8, "r4") == FanEnd::Rim);
  CHECK(throws_code("NotAFan", [&] { fan_end_kind(w4, full8, "s2"); }));
}

TEST_CASE("path_of_3seps") {
  Matroid m = nine_point();
  Path3Sep p = path_of_3seps(m, {"1", "2", "4"}, {"5"}, {"3", "6", "7", "8", "9"});
  REQUIRE(p.parts.size() == 3);
  CHECK(p.parts[0] == std::set<std::string>{"1", "2", "4"});
  CHECK(p.parts[1] == std::set<std::string>{"5"});
  CHECK(p.parts[2] == std::set<std::string>{"3", "6", "7", "8", "9"});

  Matroid w4 = catalog("wheel(4)");
  Path3Sep wp = path_of_3seps(w4, {"r1", "s1"}, {"r2", "s2"}, {"r3", "r4", "s3", "s4"});
  REQUIRE(wp.parts.size() == 4);
  CHECK(wp.parts[0] == std::set<std::string>{"r1", "s1"});
  CHECK(wp.parts[1] == std::set<std::string>{"s2"});
  CHECK(wp.parts[2] == std::set<std::string>{"r2"});
  CHECK(wp.parts[3] == std::set<std::string>{"r3", "r4", "s3", "s4"});

  // Without middle elements the endpoints are reported as given.
  Path3Sep direct = path_of_3seps(w4, {"r1", "s1", "s2"}, {}, {"r2", "r3", "r4", "s3", "s4"});
  REQUIRE(direct.parts.size() == 2);
  CHECK(direct.parts[0].size() == 3);

  CHECK(throws_code("HypothesisFailed",
                    [] { path_of_3seps(catalog("MK4"), {"12", "34"}, {"13"}, {"14", "23", "24"}); }));
  CHECK(throws_code("ValidationError",
                    [&] { path_of_3seps(w4, {"r1", "s1"}, {"r2", "s2"}, {"r2", "r3", "r4", "s3", "s4"}); }));
}

TEST_CASE("detachable pairs") {
  auto dp = detachable_pairs(catalog("U(2,5)"));
  CHECK(dp.size() == 10);
  for (const auto& d : dp) {
    CHECK(d.by_deletion);
    CHECK_FALSE(d.by_contraction);
    CHECK(d.a < d.b);
  }
  CHECK(detachable_pairs(catalog("U(3,6)")).empty());
  CHECK(detachable_pairs(catalog("MK4")).empty());
  CHECK(throws_code("Not3Connected", [] { detachable_pairs(two_sum_of_lines()); }));
}
