#include "mfrag/exminor.hpp"

#include <algorithm>
#include <bit>

#include "mfrag/catalog.hpp"
#include "mfrag/error.hpp"

namespace mfrag {

namespace {

// Equality after forgetting the ground order: same label set, same bases as
// families of label sets.
bool same_labeled(const Matroid& m1, const Matroid& m2) {
  std::set<std::string> g1(m1.ground().begin(), m1.ground().end());
  std::set<std::string> g2(m2.ground().begin(), m2.ground().end());
  if (g1 != g2) return false;
  auto translate = [&](uint32_t s) {
    uint32_t t = 0;
    for (uint32_t u = s; u; u &= u - 1) t |= 1u << m2.index(m1.label(std::countr_zero(u)));
    return t;
  };
  std::vector<uint32_t> b1;
  b1.reserve(m1.bases().size());
  for (uint32_t s : m1.bases()) b1.push_back(translate(s));
  std::sort(b1.begin(), b1.end());
  return b1 == m2.bases();
}

std::set<std::string> set_of(std::initializer_list<std::string> ls) {
  return std::set<std::string>(ls);
}

// Strong elements of mp outside {x, y}, relative to the basis, in label
// order.
std::set<std::string> strong_outside(const Matroid& mp, const Matroid& n,
                                     const std::set<std::string>& basis, const std::string& x,
                                     const std::string& y) {
  std::set<std::string> out;
  for (const auto& c : classify_elements(mp, n, basis))
    if (c.strong.value() && c.element != x && c.element != y) out.insert(c.element);
  return out;
}

// Every three-element subset a triad: corank two overall and on every pair.
bool is_cosegment(const Matroid& m, uint32_t s) {
  if (std::popcount(s) < 3 || m.corank_of(s) != 2) return false;
  for (uint32_t u = s; u; u &= u - 1)
    for (uint32_t v = u & (u - 1); v; v &= v - 1) {
      uint32_t pair = (u & -u) | (v & -v);
      if (m.corank_of(pair) != 2) return false;
    }
  return true;
}

std::string joined(const std::set<std::string>& s) {
  std::string out;
  for (const auto& l : s) {
    if (!out.empty()) out += ",";
    out += l;
  }
  return out;
}

}  // namespace

SetupContext make_setup(const Matroid& m, const Matroid& n, const std::string& a,
                        const std::string& b, const std::set<std::string>& basis,
                        const std::string& x, const std::string& y,
                        const std::optional<PMatrix>& companion) {
  if (a == b || x == y || x == a || x == b || y == a || y == b)
    fail("InvalidSetup", "a, b, x, y must be four distinct elements");
  SetupContext ctx{m, n, a, b, basis, x, y, companion, {}, deletion(m, {a, b})};
  if (!is_3connected(ctx.m_prime)) fail("InvalidSetup", "M\\a,b is not 3-connected");
  if (!has_minor(ctx.m_prime, n)) fail("InvalidSetup", "M\\a,b has no N-minor");
  if (!basis.count(x) || !basis.count(y)) fail("InvalidSetup", "{x,y} must lie in the basis");
  if (basis.count(a) || basis.count(b)) fail("InvalidSetup", "{a,b} must avoid the basis");
  if (!m.is_basis(m.mask_of(basis)) || !ctx.m_prime.is_basis(ctx.m_prime.mask_of(basis)))
    fail("InvalidSetup", "B must be a basis of both M and M\\a,b");
  if (companion) {
    std::set<std::string> rows(companion->row_labels().begin(), companion->row_labels().end());
    std::set<std::string> cols(companion->col_labels().begin(), companion->col_labels().end());
    std::set<std::string> costar = m.labels_of(m.full_mask() & ~m.mask_of(basis));
    if (rows != basis || cols != costar)
      fail("InvalidSetup", "the companion matrix must be indexed by B x B*");
  }
  ctx.s_prime = strong_outside(ctx.m_prime, n, basis, x, y);
  ctx.s_prime.insert(x);
  ctx.s_prime.insert(y);
  return ctx;
}

std::optional<IncriminationCheck> incriminates(const Matroid& m, const PMatrix& a,
                                               const std::set<std::string>& b,
                                               const std::set<std::string>& z) {
  uint32_t bm = m.mask_of(b);
  if (!m.is_basis(bm)) fail("NotABasis", "the reference set must be a basis");
  std::set<std::string> rows(a.row_labels().begin(), a.row_labels().end());
  std::set<std::string> cols(a.col_labels().begin(), a.col_labels().end());
  if (rows != b || cols != m.labels_of(m.full_mask() & ~bm))
    fail("LabelMismatch", "the matrix must be indexed by B x B*");
  PFElement det = subdeterminant(a, z);  // NonSquareSelection guards shape
  const PartialField& pf = a.field();
  IncriminationCheck check{z, IncriminationReason::NotInP, det};
  if (!pf.is_member(det)) return check;
  bool basis_after = m.is_basis(bm ^ m.mask_of(z));
  if (pf.is_zero(det) && basis_after) {
    check.reason = IncriminationReason::ZeroButBasis;
    return check;
  }
  if (!pf.is_zero(det) && !basis_after) {
    check.reason = IncriminationReason::NonzeroButDependent;
    return check;
  }
  return std::nullopt;
}

std::optional<IncriminationCheck> incrimination_dichotomy(const Matroid& m, const PMatrix& a,
                                                          const std::set<std::string>& b) {
  uint32_t rowbits = m.mask_of(b);
  for (uint32_t z : subsets_in_order(m.full_mask())) {
    if (std::popcount(z & rowbits) != std::popcount(z & ~rowbits)) continue;
    auto check = incriminates(m, a, b, m.labels_of(z));
    if (check) return check;
  }
  return std::nullopt;
}

CompanionCheck verify_companion(const Matroid& m, const PMatrix& a_mat, const std::string& a,
                                const std::string& b, const PMatrix& d,
                                const std::set<std::string>& e_n,
                                const std::set<std::string>& basis) {
  if (a_mat.col_index(a) < 0 || a_mat.col_index(b) < 0)
    fail("LabelMismatch", "a and b must label columns of the matrix");
  std::set<std::string> rows(a_mat.row_labels().begin(), a_mat.row_labels().end());
  if (rows != basis) fail("LabelMismatch", "the matrix rows must be the basis");
  for (const auto& l : e_n)
    if (a_mat.row_index(l) < 0 && a_mat.col_index(l) < 0)
      fail("LabelMismatch", "E(N) must lie inside the matrix labels");

  CompanionCheck out;
  PMatrix minus_a = drop(a_mat, {a});
  PMatrix minus_b = drop(a_mat, {b});
  out.minus_a_pmatrix = is_pmatrix(minus_a);
  out.minus_b_pmatrix = is_pmatrix(minus_b);
  if (out.minus_a_pmatrix)
    out.minus_a_represents = same_labeled(matroid_from_pmatrix(minus_a), deletion(m, {a}));
  if (out.minus_b_pmatrix)
    out.minus_b_represents = same_labeled(matroid_from_pmatrix(minus_b), deletion(m, {b}));
  out.restriction_equivalent = scaling_equivalent(submatrix(a_mat, e_n), d).has_value();
  return out;
}

SetupContext allowable_pivot(const SetupContext& ctx, const std::string& p,
                             const std::string& q) {
  if (!ctx.companion) fail("MissingCompanion", "the context has no companion matrix");
  const PMatrix& a = *ctx.companion;
  const PartialField& pf = a.field();
  if (a.col_index(q) < 0 || q == ctx.a || q == ctx.b)
    fail("PivotNotAllowable", "q must lie in B* - {a,b}");
  if (a.row_index(p) < 0) fail("PivotNotAllowable", "p must lie in B");
  if (pf.is_zero(a.at(p, q))) fail("PivotNotAllowable", "the pivot entry A_pq is zero");

  std::string nx = ctx.x, ny = ctx.y;
  if (p == ctx.x || p == ctx.y) {
    (p == ctx.x ? nx : ny) = q;  // quadruple {a,b,x,y} ^ {p,q}
  } else {
    bool zero_row = pf.is_zero(a.at(p, ctx.a)) && pf.is_zero(a.at(p, ctx.b));
    bool zero_col = pf.is_zero(a.at(ctx.x, q)) && pf.is_zero(a.at(ctx.y, q));
    if (!zero_row && !zero_col)
      fail("PivotNotAllowable", "neither A_pa = A_pb = 0 nor A_xq = A_yq = 0 holds");
  }

  std::set<std::string> nbasis = ctx.basis;
  nbasis.erase(p);
  nbasis.insert(q);
  if (!ctx.m.is_basis(ctx.m.mask_of(nbasis)))
    fail("PivotNotAllowable", "B ^ {p,q} is not a basis of M");
  SetupContext next = make_setup(ctx.m, ctx.n, ctx.a, ctx.b, nbasis, nx, ny, pivot(a, p, q));
  if (!incriminates(next.m, *next.companion, next.basis, {next.a, next.b, next.x, next.y}))
    fail("PivotNotAllowable", "the updated quadruple does not incriminate the pivoted matrix");
  return next;
}

bool bad_submatrix_nonzero(const SetupContext& ctx) {
  if (!ctx.companion) fail("MissingCompanion", "the context has no companion matrix");
  const PMatrix& a = *ctx.companion;
  const PartialField& pf = a.field();
  for (const auto& i : {ctx.x, ctx.y})
    for (const auto& j : {ctx.a, ctx.b})
      if (pf.is_zero(a.at(i, j))) return false;
  return true;
}

std::vector<ConfiningSet> confining_sets(const SetupContext& ctx) {
  const Matroid& mp = ctx.m_prime;
  std::vector<uint32_t> triads;
  for (uint32_t c : cocircuit_masks(mp))
    if (std::popcount(c) == 3) triads.push_back(c);

  uint32_t bm = mp.mask_of(ctx.basis);
  uint32_t xym = mp.mask_of({ctx.x, ctx.y});

  // The classification is only consulted for overlap-1 witnesses, and it is
  // by far the most expensive step, so compute it on first use.
  std::optional<std::vector<ElementClassification>> classes;

  std::vector<ConfiningSet> out;
  for (size_t i = 0; i < triads.size(); ++i)
    for (size_t j = i + 1; j < triads.size(); ++j) {
      uint32_t g = triads[i] | triads[j];
      int overlap = std::popcount(triads[i] & triads[j]);
      if (overlap != 1 && overlap != 2) continue;
      if ((g & bm) != xym) continue;
      if ((mp.coclosure_of(g & ~bm) & g) != g) continue;
      ConfiningSet cs{mp.labels_of(g), mp.labels_of(triads[i]), mp.labels_of(triads[j]), overlap,
                      std::nullopt};
      if (overlap == 1) {
        if (!classes) classes = classify_elements(mp, ctx.n, ctx.basis);
        for (const auto& c : *classes)
          if (c.strong.value() && (g >> mp.index(c.element) & 1) && !ctx.basis.count(c.element)) {
            cs.strong_witness = c.element;
            break;
          }
        if (!cs.strong_witness) continue;
      }
      out.push_back(std::move(cs));
    }
  return out;
}

StrongElementReport strong_element_audit(const SetupContext& ctx) {
  if (ctx.companion) {
    if (!bad_submatrix_nonzero(ctx))
      fail("InvalidSetup", "the bad submatrix A[{a,b,x,y}] has a zero entry");
    if (!incriminates(ctx.m, *ctx.companion, ctx.basis, {ctx.a, ctx.b, ctx.x, ctx.y}))
      fail("InvalidSetup", "{a,b,x,y} does not incriminate (M, A)");
  }
  const Matroid& mp = ctx.m_prime;
  StrongElementReport report;
  report.strong_outside_xy = strong_outside(mp, ctx.n, ctx.basis, ctx.x, ctx.y);
  const auto& s = report.strong_outside_xy;

  if (s.size() > 2)
    report.violations.push_back(
        {"at-most-two-strong", "strong elements outside {x,y}: " + joined(s)});
  for (const auto& u : s)
    if (ctx.basis.count(u))
      report.violations.push_back({"strong-not-in-basis", u + " is strong yet lies in B"});

  // Cosegments through a strong element: size exactly 4, meeting B in {x,y}.
  uint32_t bm = mp.mask_of(ctx.basis);
  uint32_t xym = mp.mask_of({ctx.x, ctx.y});
  std::vector<uint32_t> confining4;
  for (uint32_t c : subsets_in_order(mp.full_mask())) {
    int pc = std::popcount(c);
    if (pc < 4 || pc > 5 || !is_cosegment(mp, c)) continue;
    if (pc == 4 && (c & bm) == xym) confining4.push_back(c);
    for (const auto& u : s) {
      if (!(c >> mp.index(u) & 1)) continue;
      if (pc == 5)
        report.violations.push_back(
            {"long-cosegment", "cosegment " + joined(mp.labels_of(c)) + " through " + u +
                                   " has more than 4 elements"});
      else if ((c & bm) != xym)
        report.violations.push_back(
            {"long-cosegment", "cosegment " + joined(mp.labels_of(c)) + " through " + u +
                                   " does not meet B exactly in {x,y}"});
    }
  }
  for (uint32_t c : confining4)
    for (const auto& u : s)
      if (!(c >> mp.index(u) & 1))
        report.violations.push_back(
            {"cosegment-confines", u + " is strong outside the 4-element cosegment " +
                                       joined(mp.labels_of(c)) + " meeting B in {x,y}"});

  for (const auto& u : s) {
    std::vector<std::set<std::string>> pairs;
    try {
      pairs = unstable_series_pairs(mp, u, ctx.n);
    } catch (const Error& e) {
      if (e.code() != "PreconditionViolated") throw;
    }
    for (const auto& sp : pairs) {
      std::set<std::string> meet;
      for (const auto& l : sp)
        if (ctx.basis.count(l) && l != ctx.x && l != ctx.y) meet.insert(l);
      if (!meet.empty())
        report.violations.push_back(
            {"unstable-series-pair", "pair " + joined(sp) + " of M'\\" + u +
                                         " meets B outside {x,y} in " + joined(meet)});
    }
  }
  return report;
}

SeparationRecord good_separation(const SetupContext& ctx, const std::string& z) {
  const Matroid& mp = ctx.m_prime;
  bool in_b = ctx.basis.count(z) != 0;
  mp.index(z);  // UnknownLabel guard

  std::optional<bool> robust, strong;
  for (const auto& c : classify_elements(mp, ctx.n, ctx.basis))
    if (c.element == z) {
      robust = c.robust;
      strong = c.strong;
    }
  if (!robust.value() || strong.value())
    fail("NotRobustNonStrong", z + " must be robust but not strong");

  Matroid md = in_b ? mp : dual(mp);
  Matroid nd = in_b ? ctx.n : dual(ctx.n);

  // Ground labels of the minor embedding after contracting z.
  Matroid mdz = contraction(md, {z});
  auto recipe = has_minor(mdz, nd);
  std::set<std::string> hint;
  for (const auto& l : mdz.ground())
    if (!recipe->contracted.count(l) && !recipe->deleted.count(l)) hint.insert(l);

  SeparationRecord rec = z_closed_separation(md, z, hint);

  // Non-flexible elements of Y off S' move to the X side; at most one exists.
  std::set<std::string> flexible;
  for (const auto& c : classify_elements(md, nd)) {
    if (c.flexible) flexible.insert(c.element);
  }
  std::set<std::string> movers;
  for (const auto& l : rec.side_y)
    if (!ctx.s_prime.count(l) && !flexible.count(l)) movers.insert(l);
  if (movers.size() > 1)
    fail("InvalidSetup", "more than one non-flexible element outside S' on the Y side: " +
                             joined(movers));
  if (!movers.empty()) {
    uint32_t zbit = 1u << md.index(z);
    uint32_t ym = md.mask_of(rec.side_y) & ~md.mask_of(movers);
    uint32_t xm = md.full_mask() & ~ym & ~zbit;
    rec.side_x = md.labels_of(xm);
    rec.side_y = md.labels_of(ym);
    rec.lambda = md.lambda_of(xm | zbit);
    rec.exact = rec.lambda == 2;
    rec.vertical = std::min(md.rank_of(xm | zbit), md.rank_of(ym)) >= 3 &&
                   std::min(md.rank_of(xm), md.rank_of(ym | zbit)) >= 3;
    rec.guts = md.labels_of(md.closure_of(xm) & md.closure_of(ym));
    rec.coguts = md.labels_of(md.coclosure_of(xm) & md.coclosure_of(ym));
    rec.z_closed_y = is_z_closed(md, z, rec.side_y);
  }
  for (const auto& l : ctx.s_prime)
    if (l != z && !rec.side_y.count(l))
      fail("InvalidSetup", "S' is not contained in the Y side: " + l + " fell outside");
  return rec;
}

namespace {

OutcomeEvidence base_evidence(const SetupContext& ctx) {
  OutcomeEvidence e;
  e.size_m = ctx.m.size();
  e.size_n = ctx.n.size();
  e.rank_m = ctx.m.rank();
  e.rank_n = ctx.n.rank();
  return e;
}

// Candidate bases for the robust-basis clauses: the supplied one, the
// unconstrained search winner, and every triad-constrained winner.
std::vector<std::set<std::string>> candidate_bases(const Matroid& mp, const Matroid& n,
                                                   const std::set<std::string>& supplied,
                                                   const std::string& x, const std::string& y) {
  std::vector<std::set<std::string>> out{supplied};
  auto push = [&](const std::set<std::string>& b) {
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
  };
  try {
    push(robust_basis_search(mp, n, {x, y, std::nullopt}).basis);
  } catch (const Error&) {
  }
  for (const auto& z : mp.ground()) {
    if (z == x || z == y) continue;
    if (!mp.is_cocircuit(mp.mask_of({x, y, z}))) continue;
    try {
      push(robust_basis_search(mp, n, {x, y, z}).basis);
    } catch (const Error&) {
    }
  }
  return out;
}

// The fragile clause shared by mainthm1(b)(i) and mainthm2(c): at most one
// robust element in B* - {a,b}, and any such element is strong with {x,y,z}
// a triad.
std::optional<OutcomeEvidence> fragile_clause(const Matroid& mp, const Matroid& n,
                                              const std::set<std::string>& basis,
                                              const std::string& x, const std::string& y,
                                              OutcomeEvidence evidence) {
  if (!is_fragile(mp, n)) return std::nullopt;
  auto classes = classify_elements(mp, n, basis);
  std::vector<std::string> robust_costar;
  for (const auto& c : classes)
    if (c.robust.value() && !basis.count(c.element)) robust_costar.push_back(c.element);
  if (robust_costar.size() > 1) return std::nullopt;
  evidence.xy = {x, y};
  evidence.basis = basis;
  evidence.robust_outside_xy = static_cast<int>(robust_costar.size());
  if (!robust_costar.empty()) {
    const std::string& z = robust_costar.front();
    bool strong = false;
    for (const auto& c : classes)
      if (c.element == z) strong = c.strong.value();
    if (!strong || !mp.is_cocircuit(mp.mask_of({x, y, z}))) return std::nullopt;
    evidence.z = z;
    evidence.triad = set_of({x, y, z});
  }
  return evidence;
}

}  // namespace

OutcomeVerdict classify_mainthm1(const SetupContext& ctx) {
  const Matroid& mp = ctx.m_prime;
  if (!is_3connected(mp) || !has_minor(mp, ctx.n))
    fail("InvalidSetup", "M\\a,b must be 3-connected with an N-minor");

  OutcomeVerdict v;
  v.instance = "M";
  v.pair = {{ctx.a, ctx.b}};
  if (ctx.m.size() <= ctx.n.size() + 16) {
    v.thm1_a = true;
    v.evidence["1a"] = base_evidence(ctx);
  }

  auto bases = candidate_bases(mp, ctx.n, ctx.basis, ctx.x, ctx.y);
  bool fragile = is_fragile(mp, ctx.n);

  for (const auto& b : bases) {
    if (v.thm1_b_i) break;
    if (auto e = fragile_clause(mp, ctx.n, b, ctx.x, ctx.y, base_evidence(ctx))) {
      v.thm1_b_i = true;
      v.evidence["1b_i"] = *e;
    }
  }

  if (!fragile) {
    for (const auto& b : bases) {
      if (v.thm1_b_ii && v.thm1_b_iii) break;
      auto classes = classify_elements(mp, ctx.n, b);
      std::set<std::string> flexible, robust;
      std::map<std::string, bool> strong;
      for (const auto& c : classes) {
        if (c.flexible) flexible.insert(c.element);
        if (c.robust.value()) robust.insert(c.element);
        strong[c.element] = c.strong.value();
      }
      auto cocircuit_clause = [&](const std::string& z) -> std::optional<std::string> {
        if (!ctx.m.is_cocircuit(ctx.m.mask_of({ctx.a, ctx.b, ctx.x, ctx.y, z})))
          return std::nullopt;
        for (const auto& p : {ctx.a, ctx.b})
          if (ctx.m.is_circuit(ctx.m.mask_of({p, ctx.x, ctx.y}))) return p;
        return std::nullopt;
      };
      auto contained = [](const std::set<std::string>& s, const std::set<std::string>& in) {
        return std::includes(in.begin(), in.end(), s.begin(), s.end());
      };

      if (!v.thm1_b_ii) {
        for (const auto& z : mp.ground()) {
          if (z == ctx.x || z == ctx.y || b.count(z) || !strong[z]) continue;
          if (!mp.is_cocircuit(mp.mask_of({ctx.x, ctx.y, z}))) continue;
          std::set<std::string> xyz = set_of({ctx.x, ctx.y, z});
          if (!contained(flexible, xyz) || !contained(robust, xyz)) continue;
          auto p = cocircuit_clause(z);
          if (!p) continue;
          v.thm1_b_ii = true;
          auto e = base_evidence(ctx);
          e.xy = {ctx.x, ctx.y};
          e.basis = b;
          e.z = z;
          e.triad = xyz;
          e.cocircuit = set_of({ctx.a, ctx.b, ctx.x, ctx.y, z});
          e.triangle = set_of({*p, ctx.x, ctx.y});
          e.robust_outside_xy = static_cast<int>(robust.size() - robust.count(ctx.x) -
                                                 robust.count(ctx.y));
          v.evidence["1b_ii"] = e;
          break;
        }
      }
      if (!v.thm1_b_iii) {
        for (const auto& z1 : mp.ground()) {
          if (v.thm1_b_iii) break;
          if (z1 == ctx.x || z1 == ctx.y || !strong[z1]) continue;
          for (const auto& z2 : mp.ground()) {
            if (z2 == z1 || z2 == ctx.x || z2 == ctx.y) continue;
            std::set<std::string> four = set_of({ctx.x, ctx.y, z1, z2});
            if (!contained(flexible, four) || !contained(robust, four)) continue;
            std::vector<std::string> order{z2, z1, ctx.x, ctx.y};
            if (!is_fan(mp, order) || !is_maximal_fan(mp, order)) continue;
            FanRecord f{order, mp.is_circuit(mp.mask_of({z2, z1, ctx.x})), true, std::nullopt};
            if (fan_type(f, b) != FanType::II) continue;
            std::optional<std::string> used_z, used_p;
            for (const auto& z : {z1, z2})
              if (auto p = cocircuit_clause(z)) {
                used_z = z;
                used_p = p;
                break;
              }
            if (!used_z) continue;
            v.thm1_b_iii = true;
            auto e = base_evidence(ctx);
            e.xy = {ctx.x, ctx.y};
            e.basis = b;
            e.z = z1;
            e.z2 = z2;
            e.fan = order;
            e.cocircuit = set_of({ctx.a, ctx.b, ctx.x, ctx.y, *used_z});
            e.triangle = set_of({*used_p, ctx.x, ctx.y});
            e.cocircuit_z = *used_z;
            v.evidence["1b_iii"] = e;
            break;
          }
        }
      }
    }
  }
  return v;
}

namespace {

// Deletion pairs making m0 3-connected with an n0-minor, the preferred pair
// first when valid.
std::vector<std::pair<std::string, std::string>> valid_pairs(
    const Matroid& m0, const Matroid& n0,
    const std::optional<std::pair<std::string, std::string>>& preferred) {
  std::vector<std::pair<std::string, std::string>> out;
  auto try_pair = [&](const std::string& u, const std::string& v) {
    if (std::find(out.begin(), out.end(), std::make_pair(u, v)) != out.end()) return;
    Matroid del = deletion(m0, {u, v});
    if (is_3connected(del) && has_minor(del, n0)) out.emplace_back(u, v);
  };
  if (preferred) try_pair(preferred->first, preferred->second);
  std::vector<std::string> g = m0.ground();
  std::sort(g.begin(), g.end());
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j) try_pair(g[i], g[j]);
  return out;
}

// mainthm2(c) on one candidate: the fragile clause over candidate bases,
// with {x,y} fixed when known and otherwise quantified over pairs of the
// basis found for each choice.
std::optional<OutcomeEvidence> thm2_c_holds(
    const Matroid& m0, const Matroid& n0, const std::string& a, const std::string& b,
    const std::optional<std::pair<std::string, std::string>>& known_xy,
    const std::optional<std::set<std::string>>& supplied_basis, OutcomeEvidence evidence) {
  Matroid mp = deletion(m0, {a, b});
  std::vector<std::pair<std::string, std::string>> xys;
  if (known_xy) {
    xys.push_back(*known_xy);
  } else {
    std::vector<std::string> g = mp.ground();
    std::sort(g.begin(), g.end());
    for (size_t i = 0; i < g.size(); ++i)
      for (size_t j = i + 1; j < g.size(); ++j) xys.emplace_back(g[i], g[j]);
  }
  if (!is_fragile(mp, n0)) return std::nullopt;
  for (const auto& [x, y] : xys) {
    std::vector<std::set<std::string>> bases;
    try {
      std::set<std::string> seed =
          supplied_basis ? *supplied_basis : robust_basis_search(mp, n0, {x, y, std::nullopt}).basis;
      bases = candidate_bases(mp, n0, seed, x, y);
    } catch (const Error&) {
      continue;  // no basis of M\a,b contains {x,y}
    }
    for (const auto& bb : bases) {
      if (!m0.is_basis(m0.mask_of(bb))) continue;  // B must extend to M0
      if (auto e = fragile_clause(mp, n0, bb, x, y, evidence)) return e;
    }
  }
  return std::nullopt;
}

}  // namespace

OutcomeVerdict classify_mainthm2(const SetupContext& ctx) {
  if (!is_3connected(ctx.m_prime) || !has_minor(ctx.m_prime, ctx.n))
    fail("InvalidSetup", "M\\a,b must be 3-connected with an N-minor");

  struct Candidate {
    std::string name;
    Matroid m0, n0;
    std::optional<std::pair<std::string, std::string>> preferred;
  };
  std::vector<Candidate> candidates;
  candidates.push_back({"M", ctx.m, ctx.n, {{ctx.a, ctx.b}}});
  Matroid mstar = dual(ctx.m);
  std::vector<std::set<std::string>> triads;
  for (uint32_t c : cocircuit_masks(mstar))
    if (std::popcount(c) == 3) triads.push_back(mstar.labels_of(c));
  std::sort(triads.begin(), triads.end());
  for (const auto& t : triads) {
    try {
      candidates.push_back({"wye-delta:" + joined(t), wye_delta(mstar, t), dual(ctx.n),
                            std::nullopt});
    } catch (const Error&) {
      // exchange undefined at this triad
    }
  }

  for (const auto& cand : candidates) {
    for (const auto& [a, b] : valid_pairs(cand.m0, cand.n0, cand.preferred)) {
      OutcomeEvidence base;
      base.size_m = cand.m0.size();
      base.size_n = cand.n0.size();
      base.rank_m = cand.m0.rank();
      base.rank_n = cand.n0.rank();
      bool oa = cand.m0.size() <= cand.n0.size() + 16;
      bool ob = cand.m0.rank() <= cand.n0.rank() + 8;
      std::optional<std::pair<std::string, std::string>> known;
      std::optional<std::set<std::string>> supplied;
      if (cand.name == "M" && a == ctx.a && b == ctx.b) {
        known = {{ctx.x, ctx.y}};
        supplied = ctx.basis;
      }
      auto oc = thm2_c_holds(cand.m0, cand.n0, a, b, known, supplied, base);
      if (!oa && !ob && !oc) continue;
      OutcomeVerdict v;
      v.instance = cand.name;
      v.pair = {{a, b}};
      v.thm2_a = oa;
      v.thm2_b = ob;
      v.thm2_c = oc.has_value();
      if (oa) v.evidence["2a"] = base;
      if (ob) v.evidence["2b"] = base;
      if (oc) v.evidence["2c"] = *oc;
      return v;
    }
  }
  OutcomeVerdict v;
  v.instance = "anomaly: no candidate satisfies any outcome";
  return v;
}

NotRepCertCheck check_notrepcert_hypotheses(const SetupContext& ctx,
                                            const std::set<std::string>& c,
                                            const std::set<std::string>& z,
                                            const std::set<std::string>& z1,
                                            const std::set<std::string>& z2) {
  const Matroid& m = ctx.m;
  for (const auto* s : {&c, &z, &z1, &z2}) m.mask_of(*s);  // UnknownLabel guard

  NotRepCertCheck out;
  out.fragile = is_strictly_fragile(minor_b(m, ctx.basis, c), ctx.n);
  out.i = z1.count(ctx.a) && !z2.count(ctx.a) && z2.count(ctx.b) && !z1.count(ctx.b);
  std::set<std::string> cxy = c;
  cxy.insert(ctx.x);
  cxy.insert(ctx.y);
  std::set<std::string> inter;
  std::set_intersection(z1.begin(), z1.end(), z2.begin(), z2.end(),
                        std::inserter(inter, inter.begin()));
  out.ii = std::includes(z.begin(), z.end(), cxy.begin(), cxy.end()) &&
           std::includes(inter.begin(), inter.end(), z.begin(), z.end());
  out.iii = is_connected(minor_b(m, ctx.basis, z));
  for (auto [flag, zi] : {std::pair{&out.iv, &z1}, {&out.v, &z2}}) {
    try {
      *flag = n_stable(minor_b(m, ctx.basis, *zi), ctx.n).stable;
    } catch (const Error& e) {
      if (e.code() != "NoNMinor") throw;
    }
  }
  if (!ctx.companion) fail("MissingCompanion", "condition (vi) needs the companion matrix");
  std::set<std::string> zu;
  std::set_union(z1.begin(), z1.end(), z2.begin(), z2.end(), std::inserter(zu, zu.begin()));
  std::set<std::string> quad{ctx.a, ctx.b, ctx.x, ctx.y};
  if (std::includes(zu.begin(), zu.end(), quad.begin(), quad.end())) {
    Matroid restricted = minor_b(m, ctx.basis, zu);
    std::set<std::string> rb;
    std::set_intersection(ctx.basis.begin(), ctx.basis.end(), zu.begin(), zu.end(),
                          std::inserter(rb, rb.begin()));
    out.vi = incriminates(restricted, submatrix(*ctx.companion, zu), rb, quad).has_value();
  }
  return out;
}

std::vector<PMatrix> enumerate_representations(const Matroid& m, int q) {
  if (q != 2 && q != 3 && q != 4 && q != 5)
    fail("UnknownField", "representation enumeration is limited to GF(2), GF(3), GF(4), GF(5)");
  int r = m.rank(), c = m.size() - m.rank();
  if (r * c > 12) fail("TooLarge", "r(M) * (|E| - r(M)) exceeds the enumeration cap of 12");
  PartialField pf = PartialField::make("GF(" + std::to_string(q) + ")");

  uint32_t b0 = *std::min_element(m.bases().begin(), m.bases().end(), mask_lex_less);
  std::vector<std::string> rows, cols;
  for (int e = 0; e < m.size(); ++e) (b0 >> e & 1 ? rows : cols).push_back(m.label(e));

  // Support forced by the fundamental circuits: A_ij != 0 iff B0 ^ {i,j} is
  // a basis.
  std::vector<std::pair<int, int>> support;
  std::vector<std::vector<bool>> nonzero(rows.size(), std::vector<bool>(cols.size(), false));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      if (m.is_basis(b0 ^ (1u << m.index(rows[i])) ^ (1u << m.index(cols[j])))) {
        nonzero[i][j] = true;
        support.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }

  // A spanning forest of the bipartite support graph is pinned to one; the
  // remaining support cells range over the units.
  int nv = static_cast<int>(rows.size() + cols.size());
  std::vector<int> comp(nv, -1);
  std::vector<bool> in_forest(support.size(), false);
  for (int start = 0, nc = 0; start < nv; ++start) {
    if (comp[start] >= 0) continue;
    comp[start] = nc;
    std::vector<int> queue{start};
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (size_t k = 0; k < support.size(); ++k) {
        auto [i, j] = support[k];
        int other = v < static_cast<int>(rows.size()) && i == v ? static_cast<int>(rows.size()) + j
                    : v >= static_cast<int>(rows.size()) && j == v - static_cast<int>(rows.size())
                        ? i
                        : -1;
        if (other < 0 || comp[other] >= 0) continue;
        comp[other] = nc;
        in_forest[k] = true;
        queue.push_back(other);
      }
    }
    ++nc;
  }
  std::vector<size_t> free_cells;
  for (size_t k = 0; k < support.size(); ++k)
    if (!in_forest[k]) free_cells.push_back(k);

  std::vector<PFElement> units;
  for (const auto& e : pf.elements())
    if (!pf.is_zero(e)) units.push_back(e);

  std::vector<PMatrix> out;
  std::vector<size_t> pick(free_cells.size(), 0);
  for (;;) {
    std::vector<PFElement> entries(rows.size() * cols.size(), pf.zero());
    for (size_t k = 0; k < support.size(); ++k)
      entries[support[k].first * cols.size() + support[k].second] = pf.one();
    for (size_t t = 0; t < free_cells.size(); ++t) {
      auto [i, j] = support[free_cells[t]];
      entries[i * cols.size() + j] = units[pick[t]];
    }
    PMatrix a(pf, rows, cols, entries);
    if (same_labeled(matroid_from_pmatrix(a), m)) {
      bool fresh = true;
      for (const auto& rep : out)
        if (scaling_equivalent(a, rep)) {
          fresh = false;
          break;
        }
      if (fresh) out.push_back(std::move(a));
    }
    size_t t = 0;
    while (t < pick.size() && ++pick[t] == units.size()) pick[t++] = 0;
    if (t == pick.size()) break;
  }
  if (out.empty()) fail("NotRepresentable", "no matrix over GF(" + std::to_string(q) +
                                                ") represents the matroid");
  return out;
}

bool stabilizer_check_finite(const Matroid& n, const Matroid& m, int q) {
  std::vector<PMatrix> reps;
  try {
    reps = enumerate_representations(m, q);
  } catch (const Error& e) {
    if (e.code() == "NotRepresentable") return true;
    throw;
  }
  auto recipe = has_minor(m, n);
  if (!recipe) fail("NoNMinor", "matroid has no minor isomorphic to the target");
  std::set<std::string> kept;
  for (const auto& l : m.ground())
    if (!recipe->contracted.count(l) && !recipe->deleted.count(l)) kept.insert(l);
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j)
      if (scaling_equivalent(submatrix(reps[i], kept), submatrix(reps[j], kept))) return false;
  return true;
}

}  // namespace mfrag
