#include "mfrag/connectivity.hpp"

#include <algorithm>
#include <bit>

#include "mfrag/error.hpp"

namespace mfrag {

int lambda(const Matroid& m, const std::set<std::string>& s) {
  uint32_t mask = m.mask_of(s);
  if (mask == 0 || mask == m.full_mask()) fail("DegenerateSide", "both sides must be nonempty");
  return m.lambda_of(mask);
}

bool is_connected(const Matroid& m) {
  uint32_t full = m.full_mask();
  for (uint32_t x = 1; x < full; ++x)
    if ((x & 1) && m.lambda_of(x) == 0) return false;
  return true;
}

bool is_3connected(const Matroid& m) {
  uint32_t full = m.full_mask();
  int n = m.size();
  for (uint32_t x = 1; x < full; ++x) {
    if (!(x & 1)) continue;  // each split once, from element 0's side
    int l = m.lambda_of(x);
    if (l == 0) return false;
    int px = std::popcount(x);
    if (l <= 1 && px >= 2 && n - px >= 2) return false;
  }
  return true;
}

namespace {

SeparationRecord make_record(const Matroid& m, uint32_t x, std::optional<int> middle, uint32_t y,
                             int lam, int k) {
  SeparationRecord rec;
  rec.side_x = m.labels_of(x);
  rec.side_y = m.labels_of(y);
  if (middle) rec.middle = m.label(*middle);
  rec.lambda = lam;
  rec.exact = lam == k - 1;
  rec.vertical = std::min(m.rank_of(x | (middle ? 1u << *middle : 0)), m.rank_of(y)) >= k &&
                 std::min(m.rank_of(x), m.rank_of(y | (middle ? 1u << *middle : 0))) >= k;
  rec.guts = m.labels_of(m.closure_of(x) & m.closure_of(y));
  rec.coguts = m.labels_of(m.coclosure_of(x) & m.coclosure_of(y));
  if (middle) rec.z_closed_y = is_z_closed(m, m.label(*middle), rec.side_y);
  return rec;
}

// The canonical side of an unordered split: smaller, then lexicographically
// smaller.
bool x_side_first(uint32_t x, uint32_t y) {
  int px = std::popcount(x), py = std::popcount(y);
  if (px != py) return px < py;
  return mask_lex_less(x, y);
}

void sort_records(std::vector<SeparationRecord>& recs, const Matroid& m) {
  std::sort(recs.begin(), recs.end(), [&](const SeparationRecord& a, const SeparationRecord& b) {
    if (a.side_x.size() != b.side_x.size()) return a.side_x.size() < b.side_x.size();
    return mask_lex_less(m.mask_of(a.side_x), m.mask_of(b.side_x));
  });
}

}  // namespace

std::vector<SeparationRecord> separations(const Matroid& m, int k, int min_side) {
  std::vector<SeparationRecord> out;
  uint32_t full = m.full_mask();
  int n = m.size();
  for (uint32_t x = 1; x < full; ++x) {
    if (!(x & 1)) continue;
    int px = std::popcount(x);
    if (px < min_side || n - px < min_side) continue;
    int l = m.lambda_of(x);
    if (l > k - 1) continue;
    uint32_t y = full & ~x;
    uint32_t cx = x_side_first(x, y) ? x : y;
    out.push_back(make_record(m, cx, std::nullopt, full & ~cx, l, k));
  }
  sort_records(out, m);
  return out;
}

std::vector<SeparationRecord> vertical_3seps_through(const Matroid& m, const std::string& z) {
  if (!is_3connected(m)) fail("Not3Connected", "the matroid must be 3-connected");
  int zi = m.index(z);
  uint32_t zbit = 1u << zi;
  uint32_t rest = m.full_mask() & ~zbit;
  std::vector<SeparationRecord> out;
  if (rest == 0) return out;
  int low = std::countr_zero(rest);
  for (uint32_t x = 0; x < rest; ++x) {
    if ((x & ~rest) || !(x >> low & 1)) continue;  // subsets of rest holding the low bit
    uint32_t y = rest & ~x;
    if (y == 0) continue;
    if (m.lambda_of(x) != 2 || m.lambda_of(x | zbit) != 2) continue;
    if (m.rank_of(x) < 3 || m.rank_of(y) < 3) continue;
    if (!(m.closure_of(x) >> zi & 1) || !(m.closure_of(y) >> zi & 1)) continue;
    uint32_t cx = x_side_first(x, y) ? x : y;
    out.push_back(make_record(m, cx, zi, rest & ~cx, m.lambda_of(cx | zbit), 3));
  }
  sort_records(out, m);
  return out;
}

ClosureFlags cl_or_clstar_membership(const Matroid& m, const std::set<std::string>& x,
                                     const std::string& e) {
  uint32_t xm = m.mask_of(x);
  int ei = m.index(e);
  return ClosureFlags{(m.closure_of(xm) >> ei & 1) != 0, (m.coclosure_of(xm) >> ei & 1) != 0};
}

namespace {

uint32_t fcl_mask(const Matroid& m, uint32_t s) {
  for (;;) {
    uint32_t grown = m.coclosure_of(m.closure_of(s));
    if (grown == s) return s;
    s = grown;
  }
}

}  // namespace

std::set<std::string> fcl(const Matroid& m, const std::set<std::string>& a) {
  return m.labels_of(fcl_mask(m, m.mask_of(a)));
}

bool is_z_closed(const Matroid& m, const std::string& z, const std::set<std::string>& y) {
  uint32_t ym = m.mask_of(y);
  uint32_t zbit = 1u << m.index(z);
  if (ym & zbit) return false;
  return m.coclosure_of(ym) == ym && (m.closure_of(ym) & ~zbit) == ym;
}

SeparationRecord z_closed_separation(const Matroid& m, const std::string& z,
                                     const std::set<std::string>& n_ground_hint) {
  std::vector<SeparationRecord> seps = vertical_3seps_through(m, z);
  if (seps.empty()) fail("NoVerticalSeparation", "si(M/" + z + ") is 3-connected");

  // Orientation with the fewest hint elements on the Y side.
  const std::set<std::string>* best_y = nullptr;
  size_t best_count = 0;
  for (const auto& rec : seps)
    for (const auto* y : {&rec.side_y, &rec.side_x}) {
      size_t cnt = 0;
      for (const auto& l : *y) cnt += n_ground_hint.count(l);
      if (!best_y || cnt < best_count) {
        best_y = y;
        best_count = cnt;
      }
    }

  // Grow Y to its full closure in M/z; the complement stays the X side.
  Matroid mz = contraction(m, {z});
  std::set<std::string> y = fcl(mz, *best_y);
  uint32_t ym = m.mask_of(y);
  uint32_t zbit = 1u << m.index(z);
  uint32_t xm = m.full_mask() & ~ym & ~zbit;
  return make_record(m, xm, m.index(z), ym, m.lambda_of(xm | zbit), 3);
}

// ---------------------------------- fans ----------------------------------

namespace {

struct FanContext {
  const Matroid& m;
  std::vector<uint32_t> triangles, triads;

  explicit FanContext(const Matroid& mm) : m(mm) {
    for (uint32_t c : circuit_masks(m))
      if (std::popcount(c) == 3) triangles.push_back(c);
    for (uint32_t c : cocircuit_masks(m))
      if (std::popcount(c) == 3) triads.push_back(c);
  }

  bool has(bool triangle, uint32_t triple) const {
    const auto& v = triangle ? triangles : triads;
    return std::find(v.begin(), v.end(), triple) != v.end();
  }
};

// Checks the alternation for a fixed type of the first triple.
bool check_fan(const FanContext& ctx, const std::vector<int>& seq, bool first_is_triangle) {
  for (size_t i = 0; i + 2 < seq.size(); ++i) {
    uint32_t triple = (1u << seq[i]) | (1u << seq[i + 1]) | (1u << seq[i + 2]);
    if (!ctx.has(first_is_triangle == (i % 2 == 0), triple)) return false;
  }
  return true;
}

bool extendable(const FanContext& ctx, const std::vector<int>& seq, bool first_is_triangle) {
  uint32_t used = 0;
  for (int e : seq) used |= 1u << e;
  size_t k = seq.size();
  bool right_type = first_is_triangle == (k % 2 == 0);  // type of triple k-2
  bool left_type = !first_is_triangle;
  for (int e = 0; e < ctx.m.size(); ++e) {
    if (used >> e & 1) continue;
    if (ctx.has(right_type, (1u << seq[k - 2]) | (1u << seq[k - 1]) | (1u << e))) return true;
    if (ctx.has(left_type, (1u << e) | (1u << seq[0]) | (1u << seq[1]))) return true;
  }
  return false;
}

void grow(const FanContext& ctx, std::vector<int>& seq, bool first_is_triangle, uint32_t used,
          std::vector<std::pair<std::vector<int>, bool>>& out) {
  size_t k = seq.size();
  bool next_type = first_is_triangle == (k % 2 == 0);  // type of triple k-1
  bool extended = false;
  for (int e = 0; e < ctx.m.size(); ++e) {
    if (used >> e & 1) continue;
    uint32_t triple = (1u << seq[k - 2]) | (1u << seq[k - 1]) | (1u << e);
    if (!ctx.has(next_type, triple)) continue;
    extended = true;
    seq.push_back(e);
    grow(ctx, seq, first_is_triangle, used | (1u << e), out);
    seq.pop_back();
  }
  if (!extended && !extendable(ctx, seq, first_is_triangle)) out.emplace_back(seq, first_is_triangle);
}

}  // namespace

bool is_fan(const Matroid& m, const std::vector<std::string>& ordering) {
  if (ordering.size() < 3) return false;
  std::vector<int> seq;
  uint32_t used = 0;
  for (const auto& l : ordering) {
    int i = m.index(l);
    if (used >> i & 1) return false;
    used |= 1u << i;
    seq.push_back(i);
  }
  FanContext ctx(m);
  return check_fan(ctx, seq, true) || check_fan(ctx, seq, false);
}

bool is_maximal_fan(const Matroid& m, const std::vector<std::string>& ordering) {
  if (!is_fan(m, ordering)) return false;
  std::vector<int> seq;
  for (const auto& l : ordering) seq.push_back(m.index(l));
  FanContext ctx(m);
  bool maximal = false;
  for (bool first : {true, false})
    if (check_fan(ctx, seq, first) && !extendable(ctx, seq, first)) maximal = true;
  return maximal;
}

std::vector<FanRecord> fans(const Matroid& m) {
  FanContext ctx(m);
  std::vector<std::pair<std::vector<int>, bool>> found;
  for (bool first : {true, false}) {
    const auto& triples = first ? ctx.triangles : ctx.triads;
    for (uint32_t t : triples) {
      std::vector<int> els;
      for (uint32_t u = t; u; u &= u - 1) els.push_back(std::countr_zero(u));
      std::sort(els.begin(), els.end());
      std::vector<int> seq(els);
      do {
        std::vector<int> s = seq;
        grow(ctx, s, first, t, found);
      } while (std::next_permutation(seq.begin(), seq.end()));
    }
  }
  // Canonical orientation, then dedupe; prefer the triangle-start flag when
  // a sequence admits both readings.
  std::map<std::vector<std::string>, bool> canon;
  for (auto& [seq, first] : found) {
    std::vector<std::string> labels;
    for (int e : seq) labels.push_back(m.label(e));
    bool starts_triangle = first;
    if (labels.back() < labels.front()) {
      std::reverse(labels.begin(), labels.end());
      starts_triangle = first == (seq.size() % 2 == 1);
    }
    auto it = canon.find(labels);
    if (it == canon.end())
      canon[labels] = starts_triangle;
    else
      it->second = it->second || starts_triangle;
  }
  std::vector<FanRecord> out;
  for (const auto& [labels, flag] : canon) out.push_back(FanRecord{labels, flag, true, std::nullopt});
  return out;
}

std::optional<FanType> fan_type(const FanRecord& f, const std::set<std::string>& b) {
  size_t k = f.ordering.size();
  if (k < 4) return std::nullopt;
  for (bool reversed : {false, true}) {
    std::vector<std::string> ord = f.ordering;
    bool starts_triangle = f.starts_with_triangle;
    if (reversed) {
      std::reverse(ord.begin(), ord.end());
      starts_triangle = f.starts_with_triangle == (k % 2 == 1);
    }
    if (!starts_triangle) continue;
    std::set<std::string> inter;
    for (const auto& l : ord)
      if (b.count(l)) inter.insert(l);
    if (inter == std::set<std::string>{ord[0], ord[2]}) return FanType::I;
    if (inter == std::set<std::string>{ord[0], ord[2], ord[3]}) return FanType::II;
  }
  return std::nullopt;
}

FanEnd fan_end_kind(const Matroid& m, const FanRecord& f, const std::string& elem) {
  if (f.ordering.size() < 4 || !is_fan(m, f.ordering))
    fail("NotAFan", "need a fan of length at least 4");
  uint32_t triple;
  if (elem == f.ordering.front()) {
    triple = m.mask_of({f.ordering[0], f.ordering[1], f.ordering[2]});
  } else if (elem == f.ordering.back()) {
    size_t k = f.ordering.size();
    triple = m.mask_of({f.ordering[k - 3], f.ordering[k - 2], f.ordering[k - 1]});
  } else {
    fail("NotAFan", "'" + elem + "' is not an end of the fan");
  }
  return m.is_circuit(triple) ? FanEnd::Spoke : FanEnd::Rim;
}

// ---------------------------- paths of 3-seps ----------------------------

namespace {

struct PathBuilder {
  const Matroid& m;

  // Splits (A, Z, B) on its smallest-label middle element; appends the
  // ordered middles to `order`.
  void build(uint32_t a, uint32_t z, uint32_t b, std::vector<int>& order) {
    if (z == 0) return;
    int pivot = -1;
    for (int e = 0; e < m.size(); ++e)
      if ((z >> e & 1) && (pivot < 0 || m.label(e) < m.label(pivot))) pivot = e;
    uint32_t others = z & ~(1u << pivot);
    uint32_t aprime = split_for(a, others, b, pivot);
    if (aprime == UINT32_MAX)
      fail("HypothesisFailed", "no 3-separation path through '" + m.label(pivot) + "'");
    uint32_t bprime = m.full_mask() & ~aprime & ~(1u << pivot);
    build(a, aprime & ~a, bprime | (1u << pivot), order);
    order.push_back(pivot);
    build(aprime | (1u << pivot), bprime & ~b, b, order);
  }

  // First A' (by size, then lex) with A ⊆ A' ⊆ A∪others and both A' and
  // A'∪pivot exactly 3-separating; UINT32_MAX if none.
  uint32_t split_for(uint32_t a, uint32_t others, uint32_t, int pivot) {
    for (uint32_t s : subsets_in_order(others)) {
      uint32_t aprime = a | s;
      if (m.lambda_of(aprime) == 2 && m.lambda_of(aprime | (1u << pivot)) == 2) return aprime;
    }
    return UINT32_MAX;
  }
};

}  // namespace

Path3Sep path_of_3seps(const Matroid& m, const std::set<std::string>& a,
                       const std::set<std::string>& z, const std::set<std::string>& b_side) {
  uint32_t am = m.mask_of(a), zm = m.mask_of(z), bm = m.mask_of(b_side);
  if ((am & zm) || (am & bm) || (zm & bm) || (am | zm | bm) != m.full_mask())
    fail("ValidationError", "A, Z, B must partition the ground set");
  PathBuilder builder{m};
  // Hypothesis: each z admits a path (A',z,B') refining (A,B).
  std::vector<int> zs;
  for (int e = 0; e < m.size(); ++e)
    if (zm >> e & 1) zs.push_back(e);
  std::sort(zs.begin(), zs.end(), [&](int p, int q) { return m.label(p) < m.label(q); });
  for (int e : zs)
    if (builder.split_for(am, zm & ~(1u << e), bm, e) == UINT32_MAX)
      fail("HypothesisFailed", "no 3-separation path through '" + m.label(e) + "'");

  std::vector<int> order;
  builder.build(am, zm, bm, order);
  Path3Sep path;
  path.parts.push_back(a);
  for (int e : order) path.parts.push_back({m.label(e)});
  path.parts.push_back(b_side);
  return path;
}

std::vector<DetachablePair> detachable_pairs(const Matroid& m) {
  if (!is_3connected(m)) fail("Not3Connected", "the matroid must be 3-connected");
  std::vector<DetachablePair> out;
  if (m.size() < 3) return out;
  std::vector<std::string> labels = m.ground();
  std::sort(labels.begin(), labels.end());
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j) {
      DetachablePair p{labels[i], labels[j], false, false};
      std::set<std::string> pair{p.a, p.b};
      p.by_deletion = is_3connected(deletion(m, pair));
      p.by_contraction = is_3connected(contraction(m, pair));
      if (p.by_deletion || p.by_contraction) out.push_back(p);
    }
  return out;
}

}  // namespace mfrag
