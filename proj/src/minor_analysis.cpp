#include "mfrag/minor_analysis.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mfrag/catalog.hpp"
#include "mfrag/error.hpp"

namespace mfrag {

namespace {

// Cheap isomorphism invariants compared before running the full isomorphism
// search: ground size, rank, basis count, sorted per-element basis degrees
// and the circuit-size histogram.
struct Profile {
  int size = 0;
  int rank = 0;
  size_t nbases = 0;
  std::vector<int> basis_degrees;
  std::vector<int> circuit_histogram;

  bool operator==(const Profile&) const = default;
};

Profile profile_of(const Matroid& m) {
  Profile p;
  p.size = m.size();
  p.rank = m.rank();
  p.nbases = m.bases().size();
  p.basis_degrees.assign(m.size(), 0);
  for (uint32_t b : m.bases())
    for (int i = 0; i < m.size(); ++i)
      if (b >> i & 1) ++p.basis_degrees[i];
  std::sort(p.basis_degrees.begin(), p.basis_degrees.end());
  p.circuit_histogram.assign(m.size() + 1, 0);
  for (uint32_t c : circuit_masks(m)) ++p.circuit_histogram[std::popcount(c)];
  return p;
}

// The minor M/C\D on the kept elements, with C independent; target_rank is
// the known rank of the result.
Matroid minor_on(const Matroid& m, uint32_t c, uint32_t keep, int target_rank) {
  std::vector<int> bit;
  for (int i = 0; i < m.size(); ++i)
    if (keep >> i & 1) bit.push_back(i);
  const int nk = static_cast<int>(bit.size());
  const int crank = std::popcount(c);
  std::vector<uint32_t> bs;
  for (uint32_t t = 0; t < (1u << nk); ++t) {
    if (std::popcount(t) != target_rank) continue;
    uint32_t s = c;
    for (int j = 0; j < nk; ++j)
      if (t >> j & 1) s |= 1u << bit[j];
    if (m.rank_of(s) == crank + target_rank) bs.push_back(t);
  }
  return Matroid::from_masks(m.label_list_of(keep), std::move(bs), false);
}

// Whether removing the single element e (contracting when contract_side)
// leaves a matroid with an N-minor.
bool removal_keeps_minor(const Matroid& m, const std::string& e, const Matroid& n,
                         bool contract_side) {
  if (m.size() <= n.size()) return false;
  if (m.size() == 1) return n.size() == 0;
  Matroid q = contract_side ? contraction(m, {e}) : deletion(m, {e});
  return has_minor(q, n).has_value();
}

// Whether si(M/e) (resp. co(M\e)) is 3-connected with an N-minor.
bool removal_is_strong(const Matroid& m, const std::string& e, const Matroid& n,
                       bool contract_side) {
  if (m.size() <= 1) return false;
  Matroid q = contract_side ? contraction(m, {e}) : deletion(m, {e});
  Matroid s = contract_side ? simplify(q).m : cosimplify(q).m;
  return is_3connected(s) && has_minor(s, n).has_value();
}

}  // namespace

std::optional<MinorRecipe> has_minor(const Matroid& m, const Matroid& n) {
  if (n.size() > m.size()) return std::nullopt;
  const int csize = m.rank() - n.rank();
  const int dsize = m.size() - n.size() - csize;
  if (csize < 0 || dsize < 0) return std::nullopt;

  const uint32_t full = m.full_mask();
  std::vector<uint32_t> csets, dsets;
  for (uint32_t s : subsets_in_order(full)) {
    int pc = std::popcount(s);
    if (pc == csize && m.independent(s)) csets.push_back(s);
    if (pc == dsize) dsets.push_back(s);
  }

  const Profile want = profile_of(n);
  for (uint32_t c : csets) {
    for (uint32_t d : dsets) {
      if (c & d) continue;
      uint32_t keep = full & ~c & ~d;
      if (m.rank_of(keep | c) - csize != n.rank()) continue;
      Matroid cand = minor_on(m, c, keep, n.rank());
      if (profile_of(cand) != want) continue;
      if (isomorphic(cand, n)) return MinorRecipe{m.labels_of(c), m.labels_of(d)};
    }
  }
  return std::nullopt;
}

std::vector<ElementClassification> classify_elements(
    const Matroid& m, const Matroid& n, const std::optional<std::set<std::string>>& basis) {
  if (!has_minor(m, n)) fail("NoNMinor", "matroid has no minor isomorphic to the target");
  uint32_t bmask = 0;
  if (basis) {
    bmask = m.mask_of(*basis);
    if (!m.is_basis(bmask)) fail("NotABasis", "supplied set is not a basis");
  }

  std::vector<ElementClassification> out;
  for (int i = 0; i < m.size(); ++i) {
    ElementClassification ec;
    ec.element = m.label(i);
    ec.deletable = removal_keeps_minor(m, ec.element, n, false);
    ec.contractible = removal_keeps_minor(m, ec.element, n, true);
    ec.flexible = ec.deletable && ec.contractible;
    ec.essential = !ec.deletable && !ec.contractible;
    if (basis) {
      bool in_b = bmask >> i & 1;
      ec.robust = in_b ? ec.contractible : ec.deletable;
      ec.strong = removal_is_strong(m, ec.element, n, in_b);
    }
    out.push_back(std::move(ec));
  }
  return out;
}

bool is_fragile(const Matroid& m, const Matroid& n) {
  for (int i = 0; i < m.size(); ++i) {
    const std::string& e = m.label(i);
    if (removal_keeps_minor(m, e, n, false) && removal_keeps_minor(m, e, n, true))
      return false;
  }
  return true;
}

bool is_strictly_fragile(const Matroid& m, const Matroid& n) {
  return has_minor(m, n).has_value() && is_fragile(m, n);
}

RobustBasisResult robust_basis_search(const Matroid& mp, const Matroid& n,
                                      const RobustBasisConstraints& constraints) {
  const int xi = mp.index(constraints.x);
  const int yi = mp.index(constraints.y);
  const uint32_t xy = (1u << xi) | (1u << yi);

  const int sz = mp.size();
  std::vector<char> del_minor(sz), con_minor(sz), del_strong(sz), con_strong(sz);
  for (int i = 0; i < sz; ++i) {
    const std::string& e = mp.label(i);
    del_minor[i] = removal_keeps_minor(mp, e, n, false);
    con_minor[i] = removal_keeps_minor(mp, e, n, true);
    del_strong[i] = removal_is_strong(mp, e, n, false);
    con_strong[i] = removal_is_strong(mp, e, n, true);
  }

  std::optional<int> zi;
  if (constraints.triad_z) {
    zi = mp.index(*constraints.triad_z);
    uint32_t tri = xy | (1u << *zi);
    if (std::popcount(tri) != 3 || !mp.is_cocircuit(tri))
      fail("NoBasisMeetsConstraints", "required triad {" + constraints.x + "," +
                                          constraints.y + "," + *constraints.triad_z +
                                          "} is not a triad of the matroid");
    if (!del_strong[*zi])
      fail("NoBasisMeetsConstraints",
           "triad element " + *constraints.triad_z + " is not strong outside the basis");
  }

  bool found = false;
  uint32_t best = 0;
  int best_count = -1;
  for (uint32_t b : mp.bases()) {
    if ((b & xy) != xy) continue;
    if (zi && (b >> *zi & 1)) continue;
    int count = 0;
    for (int i = 0; i < sz; ++i) {
      if (xy >> i & 1) continue;
      count += (b >> i & 1) ? con_minor[i] : del_minor[i];
    }
    if (!found || count > best_count || (count == best_count && mask_lex_less(b, best))) {
      found = true;
      best = b;
      best_count = count;
    }
  }
  if (!found) fail("NoBasisMeetsConstraints", "no basis contains the designated pair");

  RobustBasisResult res;
  res.basis = mp.labels_of(best);
  res.robust_count = best_count;
  for (int i = 0; i < sz; ++i) {
    if (xy >> i & 1) continue;
    if ((best >> i & 1) ? con_strong[i] : del_strong[i]) res.strong_outside.insert(mp.label(i));
  }
  return res;
}

namespace {

bool is_wheel_or_whirl(const Matroid& q) {
  int r = q.rank();
  if (r < 3 || r > 8 || q.size() != 2 * r) return false;
  return isomorphic(q, wheel_matroid(r)).has_value() ||
         isomorphic(q, whirl_matroid(r)).has_value();
}

struct SplitterSearch {
  const Matroid& host;
  const Matroid& n;
  std::set<std::pair<uint32_t, uint32_t>> visited;  // (contracted, deleted) in host bits
  std::vector<std::string> order;
  std::set<std::string> cset, dset;

  bool run(const Matroid& q, uint32_t cmask, uint32_t dmask) {
    if (q.size() == n.size()) return isomorphic(q, n).has_value();
    for (bool del : {true, false}) {
      for (int i = 0; i < q.size(); ++i) {
        const std::string& e = q.label(i);
        uint32_t ebit = 1u << host.index(e);
        uint32_t c2 = cmask | (del ? 0 : ebit);
        uint32_t d2 = dmask | (del ? ebit : 0);
        if (!visited.insert({c2, d2}).second) continue;
        Matroid q2 = del ? deletion(q, {e}) : contraction(q, {e});
        if (!is_3connected(q2) || !has_minor(q2, n)) continue;
        order.push_back(e);
        (del ? dset : cset).insert(e);
        if (run(q2, c2, d2)) return true;
        order.pop_back();
        (del ? dset : cset).erase(e);
      }
    }
    return false;
  }
};

}  // namespace

std::optional<SplitterSequence> splitter_sequence(const Matroid& m, const Matroid& n) {
  if (n.size() < 4) fail("PreconditionViolated", "target must have at least 4 elements");
  if (!is_3connected(n)) fail("PreconditionViolated", "target must be 3-connected");
  if (is_wheel_or_whirl(n)) fail("PreconditionViolated", "target is a wheel or a whirl");
  if (!is_3connected(m)) fail("PreconditionViolated", "host must be 3-connected");
  if (!has_minor(m, n)) fail("PreconditionViolated", "host has no minor isomorphic to the target");

  SplitterSearch search{m, n, {}, {}, {}, {}};
  if (!search.run(m, 0, 0)) return std::nullopt;
  return SplitterSequence{MinorRecipe{std::move(search.cset), std::move(search.dset)},
                          std::move(search.order)};
}

Matroid two_sum_part(const Matroid& m, const std::set<std::string>& side,
                     const std::string& basepoint) {
  const uint32_t x = m.mask_of(side);
  if (x == 0 || x == m.full_mask()) fail("DegenerateSide", "side must be a proper nonempty subset");
  for (const auto& g : m.ground())
    if (g == basepoint) fail("LabelCollision", "basepoint label already names an element");

  // Ranks in the part: r'(S) = r(S) for S inside the side, and the basepoint
  // behaves as a free point on the guts, r'(S + p) = r(S u Y) - r(Y) + 1.
  const uint32_t y = m.full_mask() & ~x;
  const int ry = m.rank_of(y);
  std::vector<int> bit;
  for (int i = 0; i < m.size(); ++i)
    if (x >> i & 1) bit.push_back(i);
  const int nk = static_cast<int>(bit.size());

  auto expand = [&](uint32_t t) {
    uint32_t s = 0;
    for (int j = 0; j < nk; ++j)
      if (t >> j & 1) s |= 1u << bit[j];
    return s;
  };

  const int part_rank = std::max(m.rank_of(x), m.rank() - ry + 1);
  std::vector<uint32_t> bs;
  for (uint32_t t = 0; t < (1u << nk); ++t) {
    int pc = std::popcount(t);
    uint32_t s = expand(t);
    if (pc == part_rank && m.rank_of(s) == pc) bs.push_back(t);
    if (pc == part_rank - 1 && m.rank_of(s | y) - ry + 1 == pc + 1)
      bs.push_back(t | (1u << nk));
  }

  std::vector<std::string> ground = m.label_list_of(x);
  ground.push_back(basepoint);
  return Matroid::from_masks(std::move(ground), std::move(bs), true);
}

NStableResult n_stable(const Matroid& m, const Matroid& n) {
  if (is_binary(n)) fail("NNotApplicable", "stability is defined against a non-binary target");
  auto emb = has_minor(m, n);
  if (!emb) fail("NoNMinor", "matroid has no minor isomorphic to the target");

  std::set<std::string> support;
  for (const auto& g : m.ground())
    if (!emb->contracted.count(g) && !emb->deleted.count(g)) support.insert(g);

  std::string bp = "p";  // any label not already on the ground set
  for (int k = 0;; ++k) {
    bool taken = false;
    for (const auto& g : m.ground()) taken = taken || g == bp;
    if (!taken) break;
    bp = "p" + std::to_string(k);
  }

  auto meets = [&](const std::set<std::string>& s) {
    int c = 0;
    for (const auto& e : s) c += support.count(e);
    return c;
  };

  for (const SeparationRecord& rec : separations(m, 2, 2)) {
    for (bool swapped : {false, true}) {
      const std::set<std::string>& xs = swapped ? rec.side_y : rec.side_x;
      if (meets(xs) > 1) continue;
      if (!is_binary(two_sum_part(m, xs, bp))) {
        SeparationRecord w = rec;
        if (swapped) {
          std::swap(w.side_x, w.side_y);
        }
        return NStableResult{false, std::move(w)};
      }
    }
  }
  return NStableResult{true, std::nullopt};
}

std::vector<std::set<std::string>> unstable_series_pairs(const Matroid& m_with_e,
                                                         const std::string& e,
                                                         const Matroid& n) {
  m_with_e.index(e);
  if (m_with_e.size() < 2) fail("PreconditionViolated", "nothing remains once e is removed");
  Matroid me = deletion(m_with_e, {e});
  SimplificationResult co = cosimplify(me);
  if (!is_3connected(co.m))
    fail("PreconditionViolated", "matroid without e is not 3-connected up to series pairs");
  if (!has_minor(me, n))
    fail("PreconditionViolated", "matroid without e has no minor isomorphic to the target");

  std::vector<std::set<std::string>> out;
  for (const auto& [rep, cls] : co.classes) {
    if (cls.size() != 2) continue;
    std::set<std::string> xs = cls;
    xs.insert(e);
    uint32_t x = m_with_e.mask_of(xs);
    if (m_with_e.rank_of(x) != 2) continue;
    uint32_t candidates = m_with_e.closure_of(x) & ~x;
    bool on_four_line = false;
    for (int i = 0; i < m_with_e.size() && !on_four_line; ++i) {
      if (!(candidates >> i & 1)) continue;
      uint32_t four = x | (1u << i);
      bool simple = true;
      for (int a = 0; a < m_with_e.size() && simple; ++a)
        for (int b = a + 1; b < m_with_e.size() && simple; ++b) {
          uint32_t pair = (1u << a) | (1u << b);
          if ((four & pair) == pair) simple = m_with_e.rank_of(pair) == 2;
        }
      on_four_line = simple;
    }
    if (on_four_line) out.push_back(cls);
  }
  return out;
}

}  // namespace mfrag
