#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mfrag/catalog.hpp"
#include "mfrag/connectivity.hpp"
#include "mfrag/matroid.hpp"

using namespace mfrag;

namespace {

using Sets = std::vector<std::set<std::string>>;

Matroid u24_like(const std::vector<std::string>& g) {
  Sets bases;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j) bases.push_back({g[i], g[j]});
  return Matroid::from_bases(g, bases);
}

}  // namespace

TEST_CASE("from_bases validates its input") {
  Matroid m = u24_like({"1", "2", "3", "4"});
  CHECK(m.size() == 4);
  CHECK(m.rank() == 2);
  CHECK(m.corank() == 2);
  CHECK(m.bases().size() == 6);

  CHECK(throws_code("ExchangeAxiomViolation",
                    [] { Matroid::from_bases({"1", "2", "3", "4"}, {{"1", "2"}, {"3", "4"}}); }));
  CHECK(throws_code("UnknownLabel", [] { Matroid::from_bases({"1", "2"}, {{"1", "9"}}); }));
  CHECK(throws_code("LabelCollision", [] { Matroid::from_bases({"1", "1"}, {{"1"}}); }));
  CHECK(throws_code("ValidationError", [] { Matroid::from_bases({"1", "2"}, {}); }));
  std::vector<std::string> big;
  for (int i = 0; i < 17; ++i) big.push_back("e" + std::to_string(i));
  CHECK(throws_code("TooLarge", [&] { Matroid::from_bases(big, {{"e0"}}); }));
}

TEST_CASE("subset enumeration order") {
  CHECK(subsets_in_order(0b111) ==
        std::vector<uint32_t>{0, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111});
  CHECK(mask_lex_less(0b011, 0b101));
  CHECK(mask_lex_less(0b101, 0b110));
  CHECK_FALSE(mask_lex_less(0b110, 0b110));
}

TEST_CASE("rank, closure and circuits of M(K4)") {
  Matroid m = catalog("MK4");
  CHECK(m.size() == 6);
  CHECK(m.rank() == 3);
  CHECK(m.ground() == std::vector<std::string>{"12", "13", "14", "23", "24", "34"});

  CHECK(rank(m, {"12", "13"}) == 2);
  CHECK(rank(m, {"12", "13", "23"}) == 2);
  CHECK(closure(m, {"12", "13"}) == std::set<std::string>{"12", "13", "23"});
  CHECK(closure(m, {"12", "34"}) == std::set<std::string>{"12", "34"});

  Sets cs = circuits(m);
  REQUIRE(cs.size() == 7);
  CHECK(cs[0] == std::set<std::string>{"12", "13", "23"});
  CHECK(cs[3] == std::set<std::string>{"23", "24", "34"});
  CHECK(cs[4] == std::set<std::string>{"12", "13", "24", "34"});
  // Triads of M(K4) are the vertex stars.
  Sets ds = cocircuits(m);
  CHECK(ds.size() == 7);
  CHECK(ds[0] == std::set<std::string>{"12", "13", "14"});
}

TEST_CASE("Fano plane") {
  Matroid f7 = catalog("F7");
  CHECK(f7.size() == 7);
  CHECK(f7.rank() == 3);
  CHECK(f7.bases().size() == 28);
  CHECK(closure(f7, {"1", "2"}).size() == 3);
  CHECK(is_binary(f7));
  CHECK_FALSE(is_binary(catalog("U(2,4)")));
  CHECK(is_binary(catalog("MK4")));
  // F7 and its non-Fano relaxation are not isomorphic.
  CHECK_FALSE(isomorphic(f7, catalog("F7minus")).has_value());
}

TEST_CASE("duality") {
  for (const char* name : {"U(2,4)", "MK4", "F7", "P8"}) {
    Matroid m = catalog(name);
    Matroid dd = dual(dual(m));
    CHECK(dd == m);
    CHECK(dual(m).rank() == m.corank());
  }
  // Circuit-cocircuit orthogonality: never exactly one common element.
  for (const char* name : {"MK4", "whirl(3)"}) {
    Matroid m = catalog(name);
    for (uint32_t c : circuit_masks(m))
      for (uint32_t d : cocircuit_masks(m)) CHECK(__builtin_popcount(c & d) != 1);
  }
}

TEST_CASE("deletion, contraction and minor_b") {
  Matroid u24 = catalog("U(2,4)");
  Matroid d = deletion(u24, {"4"});
  CHECK(d.ground() == std::vector<std::string>{"1", "2", "3"});
  CHECK(d.rank() == 2);
  Matroid c = contraction(u24, {"1"});
  CHECK(c.rank() == 1);
  CHECK(c.size() == 3);
  CHECK(throws_code("EmptyGroundSet", [&] { deletion(u24, {"1", "2", "3", "4"}); }));
  CHECK(throws_code("UnknownLabel", [&] { deletion(u24, {"7"}); }));

  // M_B[Z] = M / (B - Z) \ (B* - Z)
  Matroid mb = minor_b(u24, {"1", "2"}, {"2", "3"});
  CHECK(mb.ground() == std::vector<std::string>{"2", "3"});
  CHECK(mb.rank() == 1);
  CHECK(mb.bases().size() == 2);
  CHECK(throws_code("NotABasis", [&] { minor_b(u24, {"1"}, {"1", "2"}); }));
  CHECK(throws_code("EmptyGroundSet", [&] { minor_b(u24, {"1", "2"}, {}); }));
}

TEST_CASE("simplify collapses loops and parallel classes") {
  // Four collinear points with 1 || 2, plus the loop 5.
  Sets bases = {{"1", "3"}, {"1", "4"}, {"2", "3"}, {"2", "4"}, {"3", "4"}};
  Matroid m = Matroid::from_bases({"1", "2", "3", "4", "5"}, bases);
  SimplificationResult si = simplify(m);
  CHECK(si.m.size() == 3);
  CHECK(si.m.rank() == 2);
  CHECK(si.m.bases().size() == 3);
  CHECK(si.removed_loops == std::set<std::string>{"5"});
  CHECK(si.classes.at("1") == std::set<std::string>{"1", "2"});
  CHECK(si.classes.at("3") == std::set<std::string>{"3"});
  CHECK(si.classes.count("2") == 0);
}

TEST_CASE("cosimplify collapses series classes") {
  // Dual construction: parallel-extend U(2,4) at s, then dualize, making
  // {s,t} a series pair of a rank-3 matroid on five elements.
  std::vector<std::string> g = {"s", "t", "a", "b", "c"};
  Sets pairs;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j)
      if (!(g[i] == "s" && g[j] == "t")) pairs.push_back({g[i], g[j]});
  Matroid m = dual(Matroid::from_bases(g, pairs));
  CHECK(m.rank() == 3);
  CHECK(m.bases().size() == 9);
  SimplificationResult co = cosimplify(m);
  CHECK(co.m.size() == 4);
  CHECK(co.classes.at("s") == std::set<std::string>{"s", "t"});
  CHECK(co.removed_loops.empty());
  CHECK(isomorphic(co.m, catalog("U(2,4)")).has_value());
}

TEST_CASE("isomorphic finds a valid bijection") {
  Matroid a = catalog("whirl(2)");
  Matroid b = catalog("U(2,4)");
  auto iso = isomorphic(a, b);
  REQUIRE(iso.has_value());
  CHECK(same_labeled(relabel(a, *iso), b));

  Matroid mk4 = catalog("MK4");
  auto iso2 = isomorphic(mk4, wheel_matroid(3));
  REQUIRE(iso2.has_value());
  CHECK(same_labeled(relabel(mk4, *iso2), wheel_matroid(3)));
  CHECK_FALSE(isomorphic(mk4, catalog("whirl(3)")).has_value());

  std::map<std::string, std::string> fwd, back;
  for (const auto& l : mk4.ground()) {
    fwd[l] = "x" + l;
    back["x" + l] = l;
  }
  CHECK(relabel(relabel(mk4, fwd), back) == mk4);
}

TEST_CASE("two_sum glues along a basepoint") {
  Matroid m1 = relabel(catalog("U(2,4)"), {{"4", "p"}});
  Matroid m2 = relabel(catalog("U(2,4)"), {{"1", "p"}, {"2", "4"}, {"3", "5"}, {"4", "6"}});
  Matroid s = two_sum(m1, m2, "p");
  CHECK(s.ground() == std::vector<std::string>{"1", "2", "3", "4", "5", "6"});
  CHECK(s.rank() == 3);
  CHECK(s.is_circuit(s.mask_of({"1", "2", "3"})));
  CHECK(s.is_circuit(s.mask_of({"4", "5", "6"})));
  CHECK(circuits(s).size() == 11);
  CHECK(is_connected(s));
  CHECK_FALSE(is_3connected(s));

  Matroid loopy = Matroid::from_bases({"p", "a", "b"}, {{"a", "b"}});
  CHECK(throws_code("BadBasepoint", [&] { two_sum(loopy, m2, "p"); }));
  Matroid coloopy = Matroid::from_bases({"p", "a"}, {{"p", "a"}});
  CHECK(throws_code("BadBasepoint", [&] { two_sum(coloopy, m2, "p"); }));
  Matroid clash = relabel(catalog("U(2,3)"), {{"1", "p"}, {"2", "1"}, {"3", "2"}});
  CHECK(throws_code("LabelCollision", [&] { two_sum(m1, clash, "p"); }));
}

TEST_CASE("delta-Y exchange") {
  Matroid mk4 = catalog("MK4");
  std::set<std::string> tri = {"12", "13", "23"};
  Matroid dy = delta_y(mk4, tri);
  CHECK(dy.size() == 6);
  CHECK(dy.rank() == 4);
  CHECK(isomorphic(dy, catalog("K23")).has_value());
  CHECK(same_labeled(wye_delta(dy, tri), mk4));

  CHECK(throws_code("NotATriangle", [&] { delta_y(mk4, {"12", "13", "14"}); }));
  CHECK(throws_code("TriangleNotCoindependent",
                    [] { delta_y(catalog("U(2,3)"), {"1", "2", "3"}); }));
  CHECK(throws_code("NotATriad", [&] { wye_delta(mk4, tri); }));
}

TEST_CASE("wheels and whirls") {
  Matroid w4 = catalog("wheel(4)");
  CHECK(w4.size() == 8);
  CHECK(w4.rank() == 4);
  CHECK(same_labeled(wheel_matroid(4), w4));
  Matroid wh3 = catalog("whirl(3)");
  CHECK(wh3.size() == 6);
  CHECK(wh3.rank() == 3);
  // The whirl relaxes the rim circuit of the wheel.
  CHECK(wh3.bases().size() == wheel_matroid(3).bases().size() + 1);
  CHECK(throws_code("UnknownName", [] { catalog("wheel(9)"); }));
  CHECK(throws_code("UnknownName", [] { catalog("golden"); }));
  CHECK(throws_code("UnknownName", [] { catalog("U(5,4)"); }));
}
