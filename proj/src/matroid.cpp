#include "mfrag/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace mfrag {

bool mask_lex_less(uint32_t a, uint32_t b) {
  // Lexicographic comparison of the sorted index tuples.
  while (a && b) {
    int ia = std::countr_zero(a), ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

std::vector<uint32_t> subsets_in_order(uint32_t universe) {
  std::vector<uint32_t> subs;
  for (uint32_t s = universe;; s = (s - 1) & universe) {
    subs.push_back(s);
    if (s == 0) break;
  }
  std::sort(subs.begin(), subs.end(), [](uint32_t x, uint32_t y) {
    int px = std::popcount(x), py = std::popcount(y);
    if (px != py) return px < py;
    return mask_lex_less(x, y);
  });
  return subs;
}

int Matroid::index(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (ground_[i] == label) return i;
  fail("UnknownLabel", "no ground element '" + label + "'");
}

uint32_t Matroid::mask_of(const std::set<std::string>& labels) const {
  uint32_t m = 0;
  for (const auto& l : labels) m |= 1u << index(l);
  return m;
}

std::set<std::string> Matroid::labels_of(uint32_t mask) const {
  std::set<std::string> out;
  for (int i = 0; i < size(); ++i)
    if (mask & (1u << i)) out.insert(ground_[i]);
  return out;
}

std::vector<std::string> Matroid::label_list_of(uint32_t mask) const {
  std::vector<std::string> out;
  for (int i = 0; i < size(); ++i)
    if (mask & (1u << i)) out.push_back(ground_[i]);
  return out;
}

bool Matroid::is_basis(uint32_t s) const {
  return std::binary_search(bases_.begin(), bases_.end(), s);
}

int Matroid::corank_of(uint32_t s) const {
  return std::popcount(s) - rank_ + rank_table_[full_mask() & ~s];
}

uint32_t Matroid::closure_of(uint32_t s) const {
  uint32_t cl = s;
  int r = rank_table_[s];
  for (int i = 0; i < size(); ++i)
    if (!(s & (1u << i)) && rank_table_[s | (1u << i)] == r) cl |= 1u << i;
  return cl;
}

uint32_t Matroid::coclosure_of(uint32_t s) const {
  // e is in cl*(S) iff deleting it from E-S drops the rank of E-S.
  uint32_t comp = full_mask() & ~s;
  uint32_t cl = s;
  int rc = rank_table_[comp];
  for (int i = 0; i < size(); ++i)
    if ((comp & (1u << i)) && rank_table_[comp & ~(1u << i)] < rc) cl |= 1u << i;
  return cl;
}

bool Matroid::is_circuit(uint32_t s) const {
  int k = std::popcount(s);
  if (k == 0 || independent(s)) return false;
  for (uint32_t t = s; t; t &= t - 1)
    if (!independent(s & ~(t & -t))) return false;
  return true;
}

bool Matroid::is_cocircuit(uint32_t s) const {
  // circuit of the dual: corank(S) < |S| and every proper subset coindependent
  int k = std::popcount(s);
  if (k == 0 || corank_of(s) == k) return false;
  for (uint32_t t = s; t; t &= t - 1) {
    uint32_t sub = s & ~(t & -t);
    if (corank_of(sub) != std::popcount(sub)) return false;
  }
  return true;
}

int Matroid::lambda_of(uint32_t s) const {
  return rank_table_[s] + rank_table_[full_mask() & ~s] - rank_;
}

void Matroid::build_tables() {
  int n = size();
  size_t total = 1ull << n;
  std::vector<uint8_t> indep(total, 0);
  for (uint32_t b : bases_) indep[b] = 1;
  for (size_t m = total; m-- > 0;) {
    if (!indep[m]) continue;
    for (uint32_t t = static_cast<uint32_t>(m); t; t &= t - 1) indep[m & ~(t & -t)] = 1;
  }
  rank_table_.assign(total, 0);
  for (size_t m = 1; m < total; ++m) {
    if (indep[m]) {
      rank_table_[m] = static_cast<uint8_t>(std::popcount(static_cast<uint32_t>(m)));
    } else {
      uint8_t best = 0;
      for (uint32_t t = static_cast<uint32_t>(m); t; t &= t - 1)
        best = std::max(best, rank_table_[m & ~(t & -t)]);
      rank_table_[m] = best;
    }
  }
}

Matroid Matroid::from_masks(std::vector<std::string> ground, std::vector<uint32_t> bases,
                            bool validate) {
  if (ground.size() > 16) fail("TooLarge", "ground sets are capped at 16 elements");
  {
    std::set<std::string> seen;
    for (const auto& l : ground)
      if (!seen.insert(l).second) fail("LabelCollision", "duplicate ground label '" + l + "'");
  }
  if (bases.empty()) fail("ValidationError", "basis family must be nonempty");
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());

  Matroid m;
  m.ground_ = std::move(ground);
  m.rank_ = std::popcount(bases[0]);
  uint32_t full = m.full_mask();
  for (uint32_t b : bases) {
    if (b & ~full) fail("ValidationError", "basis mask outside ground set");
    if (std::popcount(b) != m.rank_) fail("ValidationError", "bases differ in size");
  }
  m.bases_ = std::move(bases);

  if (validate && m.rank_ > 0) {
    // Uniform families trivially satisfy exchange.
    size_t nchooser = 1;
    for (int i = 0; i < m.rank_; ++i) nchooser = nchooser * (m.size() - i) / (i + 1);
    if (m.bases_.size() != nchooser) {
      for (uint32_t b1 : m.bases_) {
        for (uint32_t b2 : m.bases_) {
          if (b1 == b2) continue;
          for (uint32_t t = b1 & ~b2; t; t &= t - 1) {
            uint32_t e = t & -t;
            bool ok = false;
            for (uint32_t u = b2 & ~b1; u; u &= u - 1) {
              if (std::binary_search(m.bases_.begin(), m.bases_.end(), (b1 & ~e) | (u & -u))) {
                ok = true;
                break;
              }
            }
            if (!ok) {
              Matroid tmp = m;  // labels_of needs an instance
              fail("ExchangeAxiomViolation",
                   "no exchange for element of B1 into B2; B1 = {" +
                       [&] {
                         std::string s;
                         for (const auto& l : tmp.label_list_of(b1)) s += (s.empty() ? "" : ",") + l;
                         return s;
                       }() +
                       "}, B2 = {" +
                       [&] {
                         std::string s;
                         for (const auto& l : tmp.label_list_of(b2)) s += (s.empty() ? "" : ",") + l;
                         return s;
                       }() +
                       "}");
            }
          }
        }
      }
    }
  }
  m.build_tables();
  return m;
}

Matroid Matroid::from_bases(const std::vector<std::string>& ground,
                            const std::vector<std::set<std::string>>& bases) {
  Matroid probe;
  probe.ground_ = ground;
  std::vector<uint32_t> masks;
  masks.reserve(bases.size());
  for (const auto& b : bases) masks.push_back(probe.mask_of(b));
  return from_masks(ground, std::move(masks), true);
}

Matroid matroid_from_bases(const std::vector<std::string>& ground,
                           const std::vector<std::set<std::string>>& bases) {
  return Matroid::from_bases(ground, bases);
}

int rank(const Matroid& m, const std::set<std::string>& s) { return m.rank_of(m.mask_of(s)); }

std::set<std::string> closure(const Matroid& m, const std::set<std::string>& s) {
  return m.labels_of(m.closure_of(m.mask_of(s)));
}

std::set<std::string> coclosure(const Matroid& m, const std::set<std::string>& s) {
  return m.labels_of(m.coclosure_of(m.mask_of(s)));
}

std::vector<uint32_t> circuit_masks(const Matroid& m) {
  std::vector<uint32_t> out;
  uint32_t full = m.full_mask();
  for (uint32_t s = 1; s <= full && full; ++s)
    if (m.is_circuit(s)) out.push_back(s);
  std::sort(out.begin(), out.end(), [](uint32_t a, uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return mask_lex_less(a, b);
  });
  return out;
}

std::vector<uint32_t> cocircuit_masks(const Matroid& m) {
  std::vector<uint32_t> out;
  uint32_t full = m.full_mask();
  for (uint32_t s = 1; s <= full && full; ++s)
    if (m.is_cocircuit(s)) out.push_back(s);
  std::sort(out.begin(), out.end(), [](uint32_t a, uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return mask_lex_less(a, b);
  });
  return out;
}

std::vector<std::set<std::string>> circuits(const Matroid& m) {
  std::vector<std::set<std::string>> out;
  for (uint32_t c : circuit_masks(m)) out.push_back(m.labels_of(c));
  return out;
}

std::vector<std::set<std::string>> cocircuits(const Matroid& m) {
  std::vector<std::set<std::string>> out;
  for (uint32_t c : cocircuit_masks(m)) out.push_back(m.labels_of(c));
  return out;
}

Matroid dual(const Matroid& m) {
  std::vector<uint32_t> cobases;
  cobases.reserve(m.bases().size());
  uint32_t full = m.full_mask();
  for (uint32_t b : m.bases()) cobases.push_back(full & ~b);
  return Matroid::from_masks(m.ground(), std::move(cobases), false);
}

namespace {

Matroid restrict_to(const Matroid& m, uint32_t keep, int new_rank, bool contract_mode,
                    uint32_t contracted) {
  // Bases of the minor: subsets s of `keep` with |s| = new_rank and
  // r(s u contracted) = new_rank + r(contracted).
  std::vector<std::string> ground;
  std::vector<int> pos;
  for (int i = 0; i < m.size(); ++i)
    if (keep & (1u << i)) {
      ground.push_back(m.label(i));
      pos.push_back(i);
    }
  if (ground.empty()) fail("EmptyGroundSet", "operation would remove every element");
  int base_rank = contract_mode ? m.rank_of(contracted) : 0;
  std::vector<uint32_t> bases;
  int k = static_cast<int>(ground.size());
  for (uint32_t s = 0; s < (1u << k); ++s) {
    if (std::popcount(s) != new_rank) continue;
    uint32_t wide = contracted;
    for (int j = 0; j < k; ++j)
      if (s & (1u << j)) wide |= 1u << pos[j];
    if (m.rank_of(wide) == new_rank + base_rank) bases.push_back(s);
  }
  return Matroid::from_masks(std::move(ground), std::move(bases), false);
}

}  // namespace

Matroid deletion(const Matroid& m, const std::set<std::string>& s) {
  uint32_t drop = m.mask_of(s);
  uint32_t keep = m.full_mask() & ~drop;
  return restrict_to(m, keep, m.rank_of(keep), false, 0);
}

Matroid contraction(const Matroid& m, const std::set<std::string>& s) {
  uint32_t c = m.mask_of(s);
  uint32_t keep = m.full_mask() & ~c;
  return restrict_to(m, keep, m.rank() - m.rank_of(c), true, c);
}

Matroid minor_b(const Matroid& m, const std::set<std::string>& b, const std::set<std::string>& z) {
  uint32_t bm = m.mask_of(b);
  if (!m.is_basis(bm)) fail("NotABasis", "B is not a basis of the matroid");
  uint32_t zm = m.mask_of(z);
  uint32_t contract = bm & ~zm;
  uint32_t del = (m.full_mask() & ~bm) & ~zm;
  if (zm == 0) fail("EmptyGroundSet", "Z must be nonempty");
  Matroid out = m;
  if (contract) out = contraction(out, out.labels_of(contract));
  if (del) {
    std::set<std::string> dl = m.labels_of(del);
    out = deletion(out, dl);
  }
  return out;
}

namespace {

// Simplification shared by simplify/cosimplify: remove "trivial" elements
// (loops resp. coloops) and keep the first element of each rank-one class.
SimplificationResult simplify_impl(const Matroid& m, bool costyle) {
  const Matroid work = costyle ? dual(m) : m;
  std::map<std::string, std::set<std::string>> classes;
  std::set<std::string> removed;
  std::vector<uint32_t> class_masks;
  uint32_t keep = 0;
  for (int i = 0; i < work.size(); ++i) {
    uint32_t e = 1u << i;
    if (work.rank_of(e) == 0) {
      removed.insert(work.label(i));
      continue;
    }
    bool joined = false;
    for (size_t c = 0; c < class_masks.size(); ++c) {
      uint32_t probe = (class_masks[c] & -class_masks[c]) | e;
      if (work.rank_of(probe) == 1) {
        class_masks[c] |= e;
        joined = true;
        break;
      }
    }
    if (!joined) {
      class_masks.push_back(e);
      keep |= e;  // first element in ground order is the representative
    }
  }
  for (uint32_t cm : class_masks) {
    int rep = std::countr_zero(cm);
    classes[work.label(rep)] = work.labels_of(cm);
  }
  // Build the restricted matroid directly so an all-loop input may become
  // the empty matroid.
  std::vector<std::string> ground;
  std::vector<int> pos;
  for (int i = 0; i < work.size(); ++i)
    if (keep & (1u << i)) {
      ground.push_back(work.label(i));
      pos.push_back(i);
    }
  int new_rank = work.rank_of(keep);
  std::vector<uint32_t> bases;
  int k = static_cast<int>(ground.size());
  for (uint32_t s = 0; s < (1u << k); ++s) {
    if (std::popcount(s) != new_rank) continue;
    uint32_t wide = 0;
    for (int j = 0; j < k; ++j)
      if (s & (1u << j)) wide |= 1u << pos[j];
    if (work.rank_of(wide) == new_rank) bases.push_back(s);
  }
  Matroid simplified = Matroid::from_masks(std::move(ground), std::move(bases), false);
  return SimplificationResult{costyle ? dual(simplified) : simplified, std::move(classes),
                              std::move(removed)};
}

}  // namespace

SimplificationResult simplify(const Matroid& m) { return simplify_impl(m, false); }
SimplificationResult cosimplify(const Matroid& m) { return simplify_impl(m, true); }

// ------------------------------- isomorphism -------------------------------

namespace {

struct IsoProfile {
  int n, r;
  size_t nbases;
  std::vector<std::vector<int>> elem;  // per element: invariant vector
  std::vector<int> circuit_histogram;  // counts by size
};

IsoProfile iso_profile(const Matroid& m) {
  IsoProfile p;
  p.n = m.size();
  p.r = m.rank();
  p.nbases = m.bases().size();
  p.elem.assign(p.n, {});
  p.circuit_histogram.assign(p.n + 2, 0);
  std::vector<int> basis_deg(p.n, 0);
  for (uint32_t b : m.bases())
    for (uint32_t t = b; t; t &= t - 1) basis_deg[std::countr_zero(t)]++;
  std::vector<std::vector<int>> circ_deg(p.n, std::vector<int>(p.n + 2, 0));
  for (uint32_t c : circuit_masks(m)) {
    int sz = std::popcount(c);
    p.circuit_histogram[sz]++;
    for (uint32_t t = c; t; t &= t - 1) circ_deg[std::countr_zero(t)][sz]++;
  }
  for (int i = 0; i < p.n; ++i) {
    p.elem[i].push_back(m.rank_of(1u << i));          // loop?
    p.elem[i].push_back(m.corank_of(1u << i));        // coloop?
    p.elem[i].push_back(basis_deg[i]);
    for (int s = 1; s <= p.n; ++s) p.elem[i].push_back(circ_deg[i][s]);
  }
  return p;
}

struct IsoSearch {
  const Matroid& a;
  const Matroid& b;
  const IsoProfile& pa;
  const IsoProfile& pb;
  std::vector<int> order;    // elements of a in assignment order
  std::vector<int> image;    // order[k] -> image in b
  std::vector<bool> used;

  bool consistent(int depth) {
    // Rank agreement on all small subsets of the assigned prefix that
    // include the newest element.
    int newest = order[depth];
    uint32_t na = 1u << newest, nb = 1u << image[depth];
    if (a.rank_of(na) != b.rank_of(nb)) return false;
    for (int i = 0; i < depth; ++i) {
      uint32_t sa = na | (1u << order[i]);
      uint32_t sb = nb | (1u << image[i]);
      if (a.rank_of(sa) != b.rank_of(sb)) return false;
      for (int j = i + 1; j < depth; ++j) {
        if (a.rank_of(sa | (1u << order[j])) != b.rank_of(sb | (1u << image[j]))) return false;
      }
    }
    return true;
  }

  bool full_check() {
    std::vector<int> map_ab(a.size());
    for (size_t k = 0; k < order.size(); ++k) map_ab[order[k]] = image[k];
    for (uint32_t basis : a.bases()) {
      uint32_t im = 0;
      for (uint32_t t = basis; t; t &= t - 1) im |= 1u << map_ab[std::countr_zero(t)];
      if (!b.is_basis(im)) return false;
    }
    return true;
  }

  bool run(int depth) {
    if (depth == a.size()) return full_check();
    int e = order[depth];
    for (int f = 0; f < b.size(); ++f) {
      if (used[f] || pa.elem[e] != pb.elem[f]) continue;
      image[depth] = f;
      used[f] = true;
      if (consistent(depth) && run(depth + 1)) return true;
      used[f] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::map<std::string, std::string>> isomorphic(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size() || a.rank() != b.rank() || a.bases().size() != b.bases().size())
    return std::nullopt;
  IsoProfile pa = iso_profile(a), pb = iso_profile(b);
  if (pa.circuit_histogram != pb.circuit_histogram) return std::nullopt;
  {
    auto sa = pa.elem, sb = pb.elem;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  IsoSearch search{a, b, pa, pb, {}, {}, {}};
  search.order.resize(a.size());
  std::iota(search.order.begin(), search.order.end(), 0);
  // Most-constrained-first: rarer invariant classes get assigned early.
  std::map<std::vector<int>, int> freq;
  for (const auto& v : pa.elem) freq[v]++;
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](int x, int y) { return freq[pa.elem[x]] < freq[pa.elem[y]]; });
  search.image.assign(a.size(), -1);
  search.used.assign(b.size(), false);
  if (!search.run(0)) return std::nullopt;
  std::map<std::string, std::string> out;
  for (size_t k = 0; k < search.order.size(); ++k)
    out[a.label(search.order[k])] = b.label(search.image[k]);
  return out;
}

Matroid relabel(const Matroid& m, const std::map<std::string, std::string>& mapping) {
  std::vector<std::string> ground;
  for (const auto& l : m.ground()) {
    auto it = mapping.find(l);
    ground.push_back(it == mapping.end() ? l : it->second);
  }
  return Matroid::from_masks(std::move(ground), m.bases(), false);
}

Matroid two_sum(const Matroid& m1, const Matroid& m2, const std::string& p) {
  int i1 = m1.index(p), i2 = m2.index(p);
  uint32_t e1 = 1u << i1, e2 = 1u << i2;
  if (m1.rank_of(e1) == 0 || m2.rank_of(e2) == 0)
    fail("BadBasepoint", "basepoint '" + p + "' is a loop");
  if (m1.corank_of(e1) == 0 || m2.corank_of(e2) == 0)
    fail("BadBasepoint", "basepoint '" + p + "' is a coloop");
  std::vector<std::string> ground;
  for (const auto& l : m1.ground())
    if (l != p) ground.push_back(l);
  for (const auto& l : m2.ground()) {
    if (l == p) continue;
    if (std::find(ground.begin(), ground.end(), l) != ground.end())
      fail("LabelCollision", "label '" + l + "' appears on both sides of the 2-sum");
    ground.push_back(l);
  }
  if (ground.size() > 16) fail("TooLarge", "2-sum exceeds the 16-element cap");
  int n = static_cast<int>(ground.size());
  int n1 = m1.size() - 1;  // first n1 positions come from m1
  auto lift1 = [&](uint32_t c) {  // mask of m1 avoiding p -> combined mask
    uint32_t out = 0;
    for (uint32_t t = c; t; t &= t - 1) {
      int idx = std::countr_zero(t);
      int shifted = idx < i1 ? idx : idx - 1;
      out |= 1u << shifted;
    }
    return out;
  };
  auto lift2 = [&](uint32_t c) {
    uint32_t out = 0;
    for (uint32_t t = c; t; t &= t - 1) {
      int idx = std::countr_zero(t);
      int shifted = (idx < i2 ? idx : idx - 1) + n1;
      out |= 1u << shifted;
    }
    return out;
  };
  // Circuits: those of either side avoiding p, plus joins through p.
  std::vector<uint32_t> seeds;
  std::vector<uint32_t> c1 = circuit_masks(m1), c2 = circuit_masks(m2);
  for (uint32_t c : c1)
    if (!(c & e1)) seeds.push_back(lift1(c));
  for (uint32_t c : c2)
    if (!(c & e2)) seeds.push_back(lift2(c));
  for (uint32_t ca : c1) {
    if (!(ca & e1)) continue;
    for (uint32_t cb : c2) {
      if (!(cb & e2)) continue;
      seeds.push_back(lift1(ca & ~e1) | lift2(cb & ~e2));
    }
  }
  std::vector<uint8_t> dep(1ull << n, 0);
  for (uint32_t s : seeds) dep[s] = 1;
  for (uint32_t m = 0; m < (1u << n); ++m) {
    if (!dep[m]) continue;
    for (int i = 0; i < n; ++i) dep[m | (1u << i)] = 1;
  }
  int best = 0;
  for (uint32_t m = 0; m < (1u << n); ++m)
    if (!dep[m]) best = std::max(best, std::popcount(m));
  std::vector<uint32_t> bases;
  for (uint32_t m = 0; m < (1u << n); ++m)
    if (!dep[m] && std::popcount(m) == best) bases.push_back(m);
  return Matroid::from_masks(std::move(ground), std::move(bases), true);
}

}  // namespace mfrag
