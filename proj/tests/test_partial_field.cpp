#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mfrag/error.hpp"
#include "mfrag/partial_field.hpp"

using namespace mfrag;

namespace {

PFElement el(const PartialField& pf, const std::string& s) { return pf.parse(s); }

}  // namespace

TEST_CASE("GF(5) arithmetic") {
  PartialField pf = PartialField::make("GF(5)");
  CHECK(pf.name() == "GF(5)");
  CHECK(pf.finite());
  CHECK(pf.elements().size() == 5);

  CHECK(pf.add(el(pf, "2"), el(pf, "4")) == el(pf, "1"));
  CHECK(pf.mul(el(pf, "2"), el(pf, "3")) == pf.one());
  CHECK(pf.mul(el(pf, "3"), el(pf, "4")) == el(pf, "2"));
  CHECK(pf.neg(el(pf, "2")) == el(pf, "3"));
  CHECK(pf.sub(el(pf, "1"), el(pf, "3")) == el(pf, "3"));
  CHECK(pf.inv(el(pf, "3")) == el(pf, "2"));
  CHECK(pf.from_int(7) == el(pf, "2"));

  for (const PFElement& e : pf.elements()) {
    CHECK(pf.is_member(e));
    CHECK(pf.parse(pf.format(e)) == e);
  }
  CHECK(pf.format(el(pf, "-1")) == "4");
  CHECK(throws_code("NotInvertible", [&] { pf.inv(pf.zero()); }));
  CHECK(throws_code("ParseError", [&] { pf.parse("7"); }));
  CHECK(throws_code("ParseError", [&] { pf.parse(""); }));
}

TEST_CASE("GF(2), GF(7), GF(11), GF(13) spot checks") {
  PartialField f2 = PartialField::make("GF(2)");
  CHECK(f2.parse("-1") == f2.one());
  CHECK(f2.add(f2.one(), f2.one()) == f2.zero());

  PartialField f7 = PartialField::make("GF(7)");
  CHECK(f7.inv(el(f7, "3")) == el(f7, "5"));
  PartialField f11 = PartialField::make("GF(11)");
  CHECK(f11.inv(el(f11, "2")) == el(f11, "6"));
  PartialField f13 = PartialField::make("GF(13)");
  CHECK(f13.mul(el(f13, "5"), el(f13, "8")) == f13.one());

  CHECK(throws_code("UnknownField", [] { PartialField::make("GF(9)"); }));
  CHECK(throws_code("UnknownField", [] { PartialField::make("GF(6)"); }));
  CHECK(throws_code("UnknownField", [] { PartialField::make("golden"); }));
}

TEST_CASE("GF(4) arithmetic") {
  PartialField pf = PartialField::make("GF(4)");
  PFElement w = el(pf, "w");
  PFElement w1 = el(pf, "w+1");

  CHECK(pf.elements().size() == 4);
  CHECK(pf.mul(w, w) == w1);
  CHECK(pf.mul(w, w1) == pf.one());
  CHECK(pf.add(w, w) == pf.zero());
  CHECK(pf.add(w, pf.one()) == w1);
  CHECK(pf.inv(w) == w1);
  CHECK(pf.parse("w^2") == w1);
  CHECK(pf.parse("w^3") == pf.one());
  CHECK(pf.parse("-1") == pf.one());

  CHECK(pf.format(w) == "w");
  CHECK(pf.format(w1) == "w+1");
  for (const PFElement& e : pf.elements()) CHECK(pf.parse(pf.format(e)) == e);
  CHECK(throws_code("ParseError", [&] { pf.parse("a"); }));
}

TEST_CASE("regular partial field membership") {
  PartialField pf = PartialField::make("regular");
  CHECK(pf.symbolic());
  CHECK(pf.is_member(pf.zero()));
  CHECK(pf.is_member(pf.one()));
  CHECK(pf.is_member(pf.minus_one()));
  CHECK(!pf.is_member(pf.from_int(2)));
  CHECK(pf.add(pf.one(), pf.one()) == pf.from_int(2));
  CHECK(pf.parse("-3") == pf.from_int(-3));
  CHECK(pf.format(pf.from_int(-3)) == "-3");
  CHECK(pf.mul(pf.minus_one(), pf.minus_one()) == pf.one());
  CHECK(throws_code("NotInvertible", [&] { pf.inv(pf.from_int(2)); }));
}

TEST_CASE("dyadic partial field") {
  PartialField pf = PartialField::make("dyadic");
  CHECK(pf.is_member(el(pf, "2^3")));
  CHECK(pf.is_member(el(pf, "-2^-2")));
  CHECK(!pf.is_member(pf.from_int(3)));
  CHECK(!pf.is_member(pf.from_int(6)));
  CHECK(pf.add(pf.one(), pf.one()) == el(pf, "2"));
  CHECK(pf.inv(el(pf, "2")) == el(pf, "2^-1"));
  CHECK(pf.mul(el(pf, "2^2"), el(pf, "2^-2")) == pf.one());
  CHECK(pf.format(el(pf, "2^-1")) == "2^-1");
  CHECK(pf.format(el(pf, "-2^3")) == "-2^3");
  CHECK(pf.format(pf.neg(el(pf, "2"))) == "-2");
}

TEST_CASE("near-regular partial field") {
  PartialField pf = PartialField::make("near-regular");
  PFElement a = el(pf, "a");
  PFElement b = el(pf, "(1-a)");

  CHECK(pf.add(a, b) == pf.one());
  CHECK(pf.is_member(a));
  CHECK(pf.is_member(b));
  CHECK(pf.is_member(pf.neg(a)));
  CHECK(pf.is_member(pf.mul(a, pf.inv(b))));
  CHECK(!pf.is_member(pf.add(a, pf.one())));
  CHECK(!pf.is_member(pf.sub(a, b)));
  CHECK(!pf.is_member(pf.from_int(2)));

  CHECK(pf.format(pf.mul(a, a)) == "a^2");
  CHECK(pf.format(pf.mul(pf.neg(a), pf.inv(b))) == "-a*(1-a)^-1");
  CHECK(pf.format(el(pf, "a^-2*(1-a)^3")) == "a^-2*(1-a)^3");

  PFElement u = pf.add(a, pf.one());
  CHECK(pf.parse(pf.format(u)) == u);
  CHECK(throws_code("ParseError", [&] { pf.parse("w"); }));
}

TEST_CASE("2-regular partial field") {
  PartialField pf = PartialField::make("2-regular");
  PFElement a1 = el(pf, "a1");
  PFElement a2 = el(pf, "a2");

  CHECK(pf.sub(a1, a2) == el(pf, "(a1-a2)"));
  CHECK(pf.is_member(el(pf, "(a1-a2)")));
  CHECK(pf.is_member(el(pf, "(1-a1)")));
  CHECK(pf.is_member(el(pf, "(1-a2)")));
  CHECK(!pf.is_member(pf.add(a1, a2)));
  CHECK(pf.format(pf.mul(a1, pf.inv(a2))) == "a1*a2^-1");
  CHECK(pf.format(el(pf, "(1-a1)*(a1-a2)^3")) == "(1-a1)*(a1-a2)^3");

  PFElement u = pf.add(a1, a2);
  CHECK(pf.parse(pf.format(u)) == u);
}

TEST_CASE("minus one is a unit everywhere") {
  for (const char* name : {"GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(7)", "GF(11)", "GF(13)",
                           "regular", "dyadic", "near-regular", "2-regular"}) {
    PartialField pf = PartialField::make(name);
    CAPTURE(name);
    CHECK(pf.is_unit(pf.minus_one()));
    CHECK(pf.mul(pf.minus_one(), pf.minus_one()) == pf.one());
    CHECK(pf.parse("-1") == pf.minus_one());
    CHECK(pf.parse("0") == pf.zero());
    CHECK(pf.format(pf.zero()) == "0");
    CHECK(pf.is_member(pf.zero()));
    CHECK(throws_code("NotInvertible", [&] { pf.inv(pf.zero()); }));
  }
}

TEST_CASE("field axioms, exhaustive on GF(4) and GF(5)") {
  for (const char* name : {"GF(4)", "GF(5)"}) {
    PartialField pf = PartialField::make(name);
    auto es = pf.elements();
    for (const PFElement& x : es)
      for (const PFElement& y : es) {
        CHECK(pf.add(x, y) == pf.add(y, x));
        CHECK(pf.mul(x, y) == pf.mul(y, x));
        for (const PFElement& z : es) {
          CHECK(pf.add(pf.add(x, y), z) == pf.add(x, pf.add(y, z)));
          CHECK(pf.mul(pf.mul(x, y), z) == pf.mul(x, pf.mul(y, z)));
          CHECK(pf.mul(x, pf.add(y, z)) == pf.add(pf.mul(x, y), pf.mul(x, z)));
        }
      }
    for (const PFElement& x : es) {
      CHECK(pf.add(x, pf.neg(x)) == pf.zero());
      if (!pf.is_zero(x)) CHECK(pf.mul(x, pf.inv(x)) == pf.one());
    }
  }
}

TEST_CASE("symbolic ring sanity") {
  PartialField pf = PartialField::make("dyadic");
  std::vector<PFElement> xs = {pf.from_int(-2), pf.from_int(-1), pf.zero(),
                               pf.one(),        pf.from_int(3),  el(pf, "2^-1")};
  for (const PFElement& x : xs)
    for (const PFElement& y : xs) {
      CHECK(pf.add(x, y) == pf.add(y, x));
      CHECK(pf.mul(x, y) == pf.mul(y, x));
      for (const PFElement& z : xs)
        CHECK(pf.mul(x, pf.add(y, z)) == pf.add(pf.mul(x, y), pf.mul(x, z)));
    }
}
