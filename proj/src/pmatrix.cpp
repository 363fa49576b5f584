#include "mfrag/pmatrix.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace mfrag {

PMatrix::PMatrix(PartialField pf, std::vector<std::string> rows, std::vector<std::string> cols,
                 std::vector<PFElement> entries)
    : pf_(std::move(pf)), rows_(std::move(rows)), cols_(std::move(cols)), entries_(std::move(entries)) {
  if (rows_.size() + cols_.size() > 16) fail("TooLarge", "matrices are capped at 16 labels");
  std::set<std::string> seen;
  for (const auto& l : rows_)
    if (!seen.insert(l).second) fail("LabelCollision", "duplicate label '" + l + "'");
  for (const auto& l : cols_)
    if (!seen.insert(l).second) fail("LabelCollision", "duplicate label '" + l + "'");
  if (entries_.size() != rows_.size() * cols_.size())
    fail("ValidationError", "entry count does not match the shape");
  for (const auto& e : entries_) {
    if (e.kind != pf_.kind() || e.prime != pf_.prime())
      fail("DescriptorMismatch", "entry from a different partial field");
  }
}

int PMatrix::row_index(const std::string& label) const {
  for (int i = 0; i < nrows(); ++i)
    if (rows_[i] == label) return i;
  return -1;
}

int PMatrix::col_index(const std::string& label) const {
  for (int j = 0; j < ncols(); ++j)
    if (cols_[j] == label) return j;
  return -1;
}

const PFElement& PMatrix::at(const std::string& r, const std::string& c) const {
  int i = row_index(r), j = col_index(c);
  if (i < 0) fail("UnknownLabel", "no row '" + r + "'");
  if (j < 0) fail("UnknownLabel", "no column '" + c + "'");
  return at(i, j);
}

namespace {

// Lazy cofactor expansion over (row mask, column mask) selections, memoized.
struct DetTable {
  const PMatrix& a;
  std::unordered_map<uint32_t, PFElement> memo;

  PFElement det(uint32_t rmask, uint32_t cmask) {
    if (rmask == 0) return a.field().one();
    uint32_t key = (rmask << 16) | cmask;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const PartialField& pf = a.field();
    int r0 = std::countr_zero(rmask);
    PFElement acc = pf.zero();
    int colpos = 0;
    for (uint32_t t = cmask; t; t &= t - 1, ++colpos) {
      int c = std::countr_zero(t);
      const PFElement& entry = a.at(r0, c);
      if (pf.is_zero(entry)) continue;
      PFElement sub = det(rmask & (rmask - 1), cmask & ~(1u << c));
      PFElement term = pf.mul(entry, sub);
      if (colpos % 2 == 1) term = pf.neg(term);
      acc = pf.add(acc, term);
    }
    memo.emplace(key, acc);
    return acc;
  }
};

struct Selection {
  uint32_t rmask, cmask;
  std::set<std::string> labels(const PMatrix& a) const {
    std::set<std::string> out;
    for (uint32_t t = rmask; t; t &= t - 1) out.insert(a.row_labels()[std::countr_zero(t)]);
    for (uint32_t t = cmask; t; t &= t - 1) out.insert(a.col_labels()[std::countr_zero(t)]);
    return out;
  }
};

// All square selections ordered by total size then lexicographically on the
// combined (rows before columns) index set.
std::vector<Selection> square_selections(const PMatrix& a) {
  int nr = a.nrows(), nc = a.ncols();
  std::vector<Selection> sels;
  for (uint32_t rm = 0; rm < (1u << nr); ++rm)
    for (uint32_t cm = 0; cm < (1u << nc); ++cm)
      if (std::popcount(rm) == std::popcount(cm)) sels.push_back({rm, cm});
  std::sort(sels.begin(), sels.end(), [&](const Selection& s, const Selection& t) {
    int ps = std::popcount(s.rmask), pt = std::popcount(t.rmask);
    if (ps != pt) return ps < pt;
    uint32_t sa = s.rmask | (s.cmask << nr), ta = t.rmask | (t.cmask << nr);
    return mask_lex_less(sa, ta);
  });
  return sels;
}

}  // namespace

PFElement subdeterminant(const PMatrix& a, const std::set<std::string>& z) {
  uint32_t rmask = 0, cmask = 0;
  for (const auto& l : z) {
    int i = a.row_index(l);
    if (i >= 0) {
      rmask |= 1u << i;
      continue;
    }
    int j = a.col_index(l);
    if (j < 0) fail("UnknownLabel", "no line '" + l + "'");
    cmask |= 1u << j;
  }
  if (std::popcount(rmask) != std::popcount(cmask))
    fail("NonSquareSelection", "selection has " + std::to_string(std::popcount(rmask)) + " rows and " +
                                   std::to_string(std::popcount(cmask)) + " columns");
  DetTable table{a, {}};
  return table.det(rmask, cmask);
}

std::optional<PMatrixViolation> pmatrix_violation(const PMatrix& a) {
  DetTable table{a, {}};
  for (const Selection& s : square_selections(a)) {
    if (s.rmask == 0) continue;
    PFElement d = table.det(s.rmask, s.cmask);
    if (!a.field().is_member(d)) return PMatrixViolation{s.labels(a), d};
  }
  return std::nullopt;
}

bool is_pmatrix(const PMatrix& a) { return !pmatrix_violation(a).has_value(); }

PMatrix pivot(const PMatrix& a, const std::string& x, const std::string& y) {
  int xi = a.row_index(x), yj = a.col_index(y);
  if (xi < 0) fail("UnknownLabel", "pivot row '" + x + "' is not a row label");
  if (yj < 0) fail("UnknownLabel", "pivot column '" + y + "' is not a column label");
  const PartialField& pf = a.field();
  const PFElement& axy = a.at(xi, yj);
  if (pf.is_zero(axy)) fail("ZeroPivotEntry", "entry at (" + x + "," + y + ") is zero");
  PFElement inv = pf.inv(axy);  // NotInvertible for non-unit ring elements

  std::vector<std::string> rows = a.row_labels(), cols = a.col_labels();
  rows[xi] = y;
  cols[yj] = x;
  std::vector<PFElement> entries;
  entries.reserve(rows.size() * cols.size());
  for (int u = 0; u < a.nrows(); ++u) {
    for (int v = 0; v < a.ncols(); ++v) {
      if (u == xi && v == yj) {
        entries.push_back(inv);
      } else if (u == xi) {
        entries.push_back(pf.mul(inv, a.at(xi, v)));
      } else if (v == yj) {
        entries.push_back(pf.neg(pf.mul(inv, a.at(u, yj))));
      } else {
        entries.push_back(pf.sub(a.at(u, v), pf.mul(pf.mul(inv, a.at(u, yj)), a.at(xi, v))));
      }
    }
  }
  return PMatrix(pf, std::move(rows), std::move(cols), std::move(entries));
}

PMatrix scale(const PMatrix& a, const std::string& line, const PFElement& factor) {
  const PartialField& pf = a.field();
  if (pf.is_zero(factor)) fail("ZeroScaleFactor", "scale factor must be a unit");
  std::vector<PFElement> entries;
  entries.reserve(a.nrows() * a.ncols());
  int ri = a.row_index(line), cj = a.col_index(line);
  if (ri < 0 && cj < 0) fail("UnknownLabel", "no line '" + line + "'");
  for (int i = 0; i < a.nrows(); ++i)
    for (int j = 0; j < a.ncols(); ++j) {
      bool hit = (i == ri) || (j == cj);
      entries.push_back(hit ? pf.mul(a.at(i, j), factor) : a.at(i, j));
    }
  return PMatrix(pf, a.row_labels(), a.col_labels(), std::move(entries));
}

PMatrix permute(const PMatrix& a, const std::vector<std::string>& row_order,
                const std::vector<std::string>& col_order) {
  auto check_perm = [](const std::vector<std::string>& order, const std::vector<std::string>& have) {
    std::vector<std::string> x = order, y = have;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) fail("NotAPermutation", "label list is not a permutation of the matrix lines");
  };
  check_perm(row_order, a.row_labels());
  check_perm(col_order, a.col_labels());
  std::vector<PFElement> entries;
  entries.reserve(a.nrows() * a.ncols());
  for (const auto& r : row_order)
    for (const auto& c : col_order) entries.push_back(a.at(r, c));
  return PMatrix(a.field(), row_order, col_order, std::move(entries));
}

std::optional<ScalingCertificate> scaling_equivalent(const PMatrix& a1, const PMatrix& a2) {
  if (!a1.field().same(a2.field())) fail("DescriptorMismatch", "matrices over different partial fields");
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(a1.row_labels()) != sorted(a2.row_labels()) ||
      sorted(a1.col_labels()) != sorted(a2.col_labels()))
    fail("LabelMismatch", "matrices must share row and column label sets");
  const PartialField& pf = a1.field();
  int nr = a1.nrows(), nc = a1.ncols();

  // Support must match exactly (by label).
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) {
      const std::string& r = a1.row_labels()[i];
      const std::string& c = a1.col_labels()[j];
      if (pf.is_zero(a1.at(i, j)) != pf.is_zero(a2.at(r, c))) return std::nullopt;
    }

  // Propagate factors over the bipartite support graph: nodes 0..nr-1 are
  // rows, nr..nr+nc-1 are columns; required: row_f * col_f = a2 / a1.
  std::vector<std::optional<PFElement>> factor(nr + nc);
  for (int start = 0; start < nr + nc; ++start) {
    if (factor[start]) continue;
    factor[start] = pf.one();
    std::vector<int> queue{start};
    while (!queue.empty()) {
      int node = queue.back();
      queue.pop_back();
      if (node < nr) {
        for (int j = 0; j < nc; ++j) {
          if (pf.is_zero(a1.at(node, j)) || factor[nr + j]) continue;
          PFElement q = pf.mul(a2.at(a1.row_labels()[node], a1.col_labels()[j]), pf.inv(a1.at(node, j)));
          factor[nr + j] = pf.mul(q, pf.inv(*factor[node]));
          queue.push_back(nr + j);
        }
      } else {
        int j = node - nr;
        for (int i = 0; i < nr; ++i) {
          if (pf.is_zero(a1.at(i, j)) || factor[i]) continue;
          PFElement q = pf.mul(a2.at(a1.row_labels()[i], a1.col_labels()[j]), pf.inv(a1.at(i, j)));
          factor[i] = pf.mul(q, pf.inv(*factor[node]));
          queue.push_back(i);
        }
      }
    }
  }
  // Verify every entry.
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) {
      if (pf.is_zero(a1.at(i, j))) continue;
      PFElement expect = pf.mul(pf.mul(*factor[i], *factor[nr + j]), a1.at(i, j));
      if (!(expect == a2.at(a1.row_labels()[i], a1.col_labels()[j]))) return std::nullopt;
    }
  ScalingCertificate cert;
  for (int i = 0; i < nr; ++i) cert.row_factors[a1.row_labels()[i]] = *factor[i];
  for (int j = 0; j < nc; ++j) cert.col_factors[a1.col_labels()[j]] = *factor[nr + j];
  return cert;
}

PMatrix submatrix(const PMatrix& a, const std::set<std::string>& keep) {
  std::vector<std::string> rows, cols;
  for (const auto& r : a.row_labels())
    if (keep.count(r)) rows.push_back(r);
  for (const auto& c : a.col_labels())
    if (keep.count(c)) cols.push_back(c);
  size_t found = rows.size() + cols.size();
  if (found != keep.size()) fail("UnknownLabel", "selection contains labels outside the matrix");
  std::vector<PFElement> entries;
  for (const auto& r : rows)
    for (const auto& c : cols) entries.push_back(a.at(r, c));
  return PMatrix(a.field(), std::move(rows), std::move(cols), std::move(entries));
}

PMatrix drop(const PMatrix& a, const std::set<std::string>& out) {
  std::set<std::string> keep;
  for (const auto& r : a.row_labels())
    if (!out.count(r)) keep.insert(r);
  for (const auto& c : a.col_labels())
    if (!out.count(c)) keep.insert(c);
  return submatrix(a, keep);
}

Matroid matroid_from_pmatrix(const PMatrix& a) {
  if (auto viol = pmatrix_violation(a)) {
    std::string zs;
    for (const auto& l : viol->z) zs += (zs.empty() ? "" : ",") + l;
    fail("NotAPMatrix", "selection {" + zs + "} has determinant " + a.field().format(viol->det) +
                            " outside the partial field");
  }
  int nr = a.nrows(), nc = a.ncols();
  std::vector<std::string> ground = a.row_labels();
  ground.insert(ground.end(), a.col_labels().begin(), a.col_labels().end());
  uint32_t xmask = nr == 0 ? 0 : (1u << nr) - 1;
  DetTable table{a, {}};
  std::vector<uint32_t> bases;
  for (uint32_t rm = 0; rm < (1u << nr); ++rm)
    for (uint32_t cm = 0; cm < (1u << nc); ++cm) {
      if (std::popcount(rm) != std::popcount(cm)) continue;
      if (!a.field().is_zero(table.det(rm, cm))) bases.push_back((xmask & ~rm) | (cm << nr));
    }
  return Matroid::from_masks(std::move(ground), std::move(bases), true);
}

}  // namespace mfrag
