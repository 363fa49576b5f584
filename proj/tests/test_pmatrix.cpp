#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mfrag/matroid.hpp"
#include "mfrag/partial_field.hpp"
#include "mfrag/pmatrix.hpp"

using namespace mfrag;

namespace {

PMatrix mk(const PartialField& pf, std::vector<std::string> rows, std::vector<std::string> cols,
           const std::vector<std::string>& entries) {
  std::vector<PFElement> parsed;
  parsed.reserve(entries.size());
  for (const auto& s : entries) parsed.push_back(pf.parse(s));
  return PMatrix(pf, std::move(rows), std::move(cols), std::move(parsed));
}

PMatrix a25() {
  return mk(PartialField::make("GF(5)"), {"x", "y"}, {"u", "v"}, {"2", "3", "1", "4"});
}

}  // namespace

TEST_CASE("construction and access") {
  PMatrix a = a25();
  const PartialField& pf = a.field();
  CHECK(a.nrows() == 2);
  CHECK(a.ncols() == 2);
  CHECK(a.row_labels() == std::vector<std::string>{"x", "y"});
  CHECK(a.at(0, 1) == pf.from_int(3));
  CHECK(a.at("y", "u") == pf.one());
  CHECK(a.row_index("y") == 1);
  CHECK(a.row_index("u") == -1);
  CHECK(a.col_index("v") == 1);
  CHECK(throws_code("UnknownLabel", [&] { a.at("u", "x"); }));

  PartialField f5 = PartialField::make("GF(5)");
  CHECK(throws_code("LabelCollision",
                    [&] { mk(f5, {"x"}, {"x"}, {"1"}); }));
  CHECK(throws_code("LabelCollision",
                    [&] { mk(f5, {"x", "x"}, {"u"}, {"1", "1"}); }));
  CHECK(throws_code("ValidationError",
                    [&] { mk(f5, {"x"}, {"u", "v"}, {"1"}); }));
  std::vector<std::string> many;
  for (int i = 0; i < 15; ++i) many.push_back("c" + std::to_string(i));
  std::vector<PFElement> ent(2 * 15, f5.one());
  CHECK(throws_code("TooLarge", [&] { PMatrix(f5, {"r0", "r1"}, many, ent); }));
  PartialField f7 = PartialField::make("GF(7)");
  CHECK(throws_code("DescriptorMismatch",
                    [&] { PMatrix(f5, {"x"}, {"u"}, {f7.one()}); }));
}

TEST_CASE("subdeterminants of the GF(5) square") {
  PMatrix a = a25();
  const PartialField& pf = a.field();
  CHECK(subdeterminant(a, {}) == pf.one());
  CHECK(subdeterminant(a, {"x", "u"}) == pf.from_int(2));
  CHECK(subdeterminant(a, {"x", "v"}) == pf.from_int(3));
  CHECK(subdeterminant(a, {"y", "u"}) == pf.one());
  CHECK(subdeterminant(a, {"y", "v"}) == pf.from_int(4));
  // 2*4 - 3*1 = 5 = 0 (mod 5)
  CHECK(pf.is_zero(subdeterminant(a, {"x", "y", "u", "v"})));
  CHECK(throws_code("NonSquareSelection", [&] { subdeterminant(a, {"x", "y", "u"}); }));
  CHECK(throws_code("UnknownLabel", [&] { subdeterminant(a, {"x", "q"}); }));
}

TEST_CASE("pmatrix_violation reports the first bad selection") {
  PartialField nr = PartialField::make("near-regular");
  PMatrix bad = mk(nr, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "1", "2"});
  auto v = pmatrix_violation(bad);
  REQUIRE(v.has_value());
  CHECK(v->z == std::set<std::string>{"r2", "c2"});
  CHECK(nr.format(v->det) == "2");
  CHECK_FALSE(is_pmatrix(bad));

  PartialField reg = PartialField::make("regular");
  PMatrix tot = mk(reg, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "1", "-1"});
  auto w = pmatrix_violation(tot);
  REQUIRE(w.has_value());
  CHECK(w->z == std::set<std::string>{"r1", "r2", "c1", "c2"});
  CHECK(reg.format(w->det) == "-2");

  CHECK(is_pmatrix(mk(reg, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "0", "1"})));
  // Over a finite field every subdeterminant is a member.
  CHECK(is_pmatrix(a25()));
  PMatrix good = mk(nr, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "1", "a"});
  CHECK(is_pmatrix(good));
}

TEST_CASE("pivot follows the four-entry rule and is an involution") {
  PMatrix a = a25();
  const PartialField& pf = a.field();
  PMatrix b = pivot(a, "x", "u");
  CHECK(b.row_labels() == std::vector<std::string>{"u", "y"});
  CHECK(b.col_labels() == std::vector<std::string>{"x", "v"});
  CHECK(b.at("u", "x") == pf.from_int(3));  // 1/2
  CHECK(b.at("u", "v") == pf.from_int(4));  // 3/2
  CHECK(b.at("y", "x") == pf.from_int(2));  // -1/2
  CHECK(pf.is_zero(b.at("y", "v")));        // 4 - 3/2
  CHECK(pivot(b, "u", "x") == a);
  CHECK(same_labeled(matroid_from_pmatrix(a), matroid_from_pmatrix(b)));

  PartialField reg = PartialField::make("regular");
  PMatrix c = mk(reg, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "0", "1"});
  CHECK(throws_code("ZeroPivotEntry", [&] { pivot(c, "r2", "c1"); }));
  CHECK(throws_code("UnknownLabel", [&] { pivot(c, "c1", "r2"); }));
}

TEST_CASE("scale multiplies one line by a unit") {
  PMatrix a = a25();
  const PartialField& pf = a.field();
  PMatrix s = scale(a, "x", pf.from_int(3));
  CHECK(s.at("x", "u") == pf.one());
  CHECK(s.at("x", "v") == pf.from_int(4));
  CHECK(s.at("y", "u") == a.at("y", "u"));
  PMatrix t = scale(a, "u", pf.from_int(2));
  CHECK(t.at("x", "u") == pf.from_int(4));
  CHECK(t.at("y", "u") == pf.from_int(2));
  CHECK(t.at("x", "v") == a.at("x", "v"));
  CHECK(throws_code("ZeroScaleFactor", [&] { scale(a, "x", pf.zero()); }));
  CHECK(throws_code("UnknownLabel", [&] { scale(a, "q", pf.one()); }));
}

TEST_CASE("scaling_equivalent finds per-line factors") {
  PMatrix a = a25();
  const PartialField& pf = a.field();
  PMatrix s = scale(scale(a, "x", pf.from_int(3)), "v", pf.from_int(2));
  auto cert = scaling_equivalent(a, s);
  REQUIRE(cert.has_value());
  for (const auto& r : a.row_labels())
    for (const auto& c : a.col_labels()) {
      PFElement expect = pf.mul(pf.mul(cert->row_factors.at(r), cert->col_factors.at(c)), a.at(r, c));
      CHECK(expect == s.at(r, c));
    }

  PartialField f4 = PartialField::make("GF(4)");
  PMatrix g1 = mk(f4, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "1", "w"});
  PMatrix g2 = mk(f4, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "1", "w+1"});
  CHECK_FALSE(scaling_equivalent(g1, g2).has_value());

  PartialField reg = PartialField::make("regular");
  PMatrix h1 = mk(reg, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "0", "1"});
  PMatrix h2 = mk(reg, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "1", "1"});
  CHECK_FALSE(scaling_equivalent(h1, h2).has_value());

  PMatrix other = mk(reg, {"p", "q"}, {"c1", "c2"}, {"1", "1", "0", "1"});
  CHECK(throws_code("LabelMismatch", [&] { scaling_equivalent(h1, other); }));
  PMatrix f5m = mk(PartialField::make("GF(5)"), {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "0", "1"});
  CHECK(throws_code("DescriptorMismatch", [&] { scaling_equivalent(h1, f5m); }));
}

TEST_CASE("permute reorders lines with their labels") {
  PMatrix a = a25();
  PMatrix p = permute(a, {"y", "x"}, {"v", "u"});
  CHECK(p.row_labels() == std::vector<std::string>{"y", "x"});
  CHECK(p.at(0, 0) == a.at("y", "v"));
  CHECK(p.at(1, 1) == a.at("x", "u"));
  CHECK(permute(p, {"x", "y"}, {"u", "v"}) == a);
  CHECK(throws_code("NotAPermutation", [&] { permute(a, {"x", "x"}, {"u", "v"}); }));
  CHECK(throws_code("NotAPermutation", [&] { permute(a, {"x", "y"}, {"u"}); }));
}

TEST_CASE("submatrix and drop") {
  PartialField f4 = PartialField::make("GF(4)");
  PMatrix a = mk(f4, {"1", "2"}, {"3", "4", "5", "6"},
                 {"1", "1", "1", "1", "1", "w", "w+1", "w+1"});
  PMatrix keep = submatrix(a, {"1", "2", "3", "4"});
  CHECK(keep == drop(a, {"5", "6"}));
  CHECK(keep.ncols() == 2);
  CHECK(keep.at("2", "4") == f4.parse("w"));
  PMatrix onerow = drop(a, {"1"});
  CHECK(onerow.row_labels() == std::vector<std::string>{"2"});
  CHECK(onerow.at("2", "6") == f4.parse("w+1"));
}

TEST_CASE("matroid_from_pmatrix") {
  Matroid m = matroid_from_pmatrix(a25());
  CHECK(m.ground() == std::vector<std::string>{"x", "y", "u", "v"});
  CHECK(m.rank() == 2);
  CHECK(m.bases().size() == 5);
  CHECK(m.is_basis(m.mask_of({"x", "y"})));
  // det A[{x,y,u,v}] = 0, so X triangle Z = {u,v} is the one non-basis pair.
  CHECK_FALSE(m.is_basis(m.mask_of({"u", "v"})));

  PartialField f2 = PartialField::make("GF(2)");
  PMatrix ones = mk(f2, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "1", "1"});
  CHECK(matroid_from_pmatrix(ones).bases().size() == 5);

  PartialField nr = PartialField::make("near-regular");
  PMatrix free4 = mk(nr, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "1", "a"});
  Matroid u24 = matroid_from_pmatrix(free4);
  CHECK(u24.rank() == 2);
  CHECK(u24.bases().size() == 6);

  PMatrix bad = mk(nr, {"r1", "r2"}, {"c1", "c2"}, {"1", "1", "1", "2"});
  CHECK(throws_code("NotAPMatrix", [&] { matroid_from_pmatrix(bad); }));
}

TEST_CASE("random GF matrices give matroids and pivots preserve them") {
  PartialField pf = PartialField::make("GF(5)");
  std::mt19937 rng(20259);
  std::uniform_int_distribution<int> dim(1, 3), val(0, 4);
  for (int trial = 0; trial < 30; ++trial) {
    int nr = dim(rng), nc = dim(rng);
    std::vector<std::string> rows, cols;
    for (int i = 0; i < nr; ++i) rows.push_back("r" + std::to_string(i));
    for (int j = 0; j < nc; ++j) cols.push_back("c" + std::to_string(j));
    std::vector<PFElement> entries;
    for (int k = 0; k < nr * nc; ++k) entries.push_back(pf.from_int(val(rng)));
    PMatrix a(pf, rows, cols, entries);
    Matroid m = matroid_from_pmatrix(a);  // from_bases validates exchange
    CHECK(m.rank() == nr);
    CHECK(m.is_basis(m.mask_of(std::set<std::string>(rows.begin(), rows.end()))));
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j)
        if (!pf.is_zero(a.at(i, j))) {
          PMatrix b = pivot(a, rows[i], cols[j]);
          CHECK(same_labeled(m, matroid_from_pmatrix(b)));
          i = nr;  // one pivot per trial
          break;
        }
  }
}
