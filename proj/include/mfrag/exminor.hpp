#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mfrag/connectivity.hpp"
#include "mfrag/matroid.hpp"
#include "mfrag/minor_analysis.hpp"
#include "mfrag/pmatrix.hpp"

namespace mfrag {

// The full input of the excluded-minor checkers: a matroid M with designated
// deletion pair {a, b}, a target minor N, a basis B of M' = M\a,b (also a
// basis of M) containing the designated pair {x, y}, and optionally a
// companion matrix A indexed by B x B*. s_prime is the set of possible
// strong elements: {x, y} together with any strong element of M' outside it.
struct SetupContext {
  Matroid m;
  Matroid n;
  std::string a, b;
  std::set<std::string> basis;
  std::string x, y;
  std::optional<PMatrix> companion;
  std::set<std::string> s_prime;
  Matroid m_prime;  // M\a,b, cached
};

// Validates the pieces (M\a,b 3-connected with an N-minor, B a basis of both
// M\a,b and M containing {x,y}, companion labels matching B and B*) and
// computes s_prime. InvalidSetup on any violation.
SetupContext make_setup(const Matroid& m, const Matroid& n, const std::string& a,
                        const std::string& b, const std::set<std::string>& basis,
                        const std::string& x, const std::string& y,
                        const std::optional<PMatrix>& companion = std::nullopt);

enum class IncriminationReason { NotInP, ZeroButBasis, NonzeroButDependent };

struct IncriminationCheck {
  std::set<std::string> z;
  IncriminationReason reason = IncriminationReason::NotInP;
  PFElement det_value;
};

// Whether Z incriminates (M, A) for the basis B: det A[Z] outside the
// partial field, or zero although B^Z is a basis, or nonzero although B^Z is
// dependent. nullopt when none applies. NonSquareSelection unless A[Z] is
// square; NotABasis unless B is a basis of M; LabelMismatch unless A is
// indexed by B x B*.
std::optional<IncriminationCheck> incriminates(const Matroid& m, const PMatrix& a,
                                               const std::set<std::string>& b,
                                               const std::set<std::string>& z);

// The dichotomy for a full candidate matrix: nullopt means A represents M
// (no set incriminates); otherwise the first incriminating Z in (size, lex)
// order.
std::optional<IncriminationCheck> incrimination_dichotomy(const Matroid& m, const PMatrix& a,
                                                          const std::set<std::string>& b);

// The three companion-matrix conditions: A-a and A-b are P-matrices, they
// represent M\a and M\b, and A[E_N] is scaling-equivalent to D. Uniqueness
// up to scaling is not decided here.
struct CompanionCheck {
  bool minus_a_pmatrix = false;
  bool minus_b_pmatrix = false;
  bool minus_a_represents = false;
  bool minus_b_represents = false;
  bool restriction_equivalent = false;

  bool all() const {
    return minus_a_pmatrix && minus_b_pmatrix && minus_a_represents && minus_b_represents &&
           restriction_equivalent;
  }
};
CompanionCheck verify_companion(const Matroid& m, const PMatrix& a_mat, const std::string& a,
                                const std::string& b, const PMatrix& d,
                                const std::set<std::string>& e_n,
                                const std::set<std::string>& basis);

// Pivot the companion matrix on (p, q) when one of the two allowable forms
// applies: p in {x,y} and q in B*-{a,b} with a nonzero entry (the
// incriminating quadruple becomes {a,b,x,y}^{p,q}), or p in B-{x,y} and q in
// B*-{a,b} with a nonzero entry and a zero row pair A_pa = A_pb = 0 or zero
// column pair A_xq = A_yq = 0 (quadruple unchanged). The new quadruple is
// re-verified to incriminate the pivoted matrix. PivotNotAllowable names the
// failing hypothesis; MissingCompanion when ctx has no matrix.
SetupContext allowable_pivot(const SetupContext& ctx, const std::string& p,
                             const std::string& q);

// True iff A_ij != 0 for i in {x,y}, j in {a,b}. MissingCompanion when ctx
// has no matrix.
bool bad_submatrix_nonzero(const SetupContext& ctx);

// G = T u T' for triads T, T' of M\a,b with G n B = {x,y}, G inside
// cl*(G n B*), and, when |T n T'| = 1, an (N,B)-strong element of G n B*
// recorded as the witness.
struct ConfiningSet {
  std::set<std::string> g;
  std::set<std::string> t1, t2;
  int overlap = 0;
  std::optional<std::string> strong_witness;
};
std::vector<ConfiningSet> confining_sets(const SetupContext& ctx);

// Audit of the strong-element lemmas on a supplied instance: enumerates the
// strong elements of M\a,b outside {x,y} and records a violation for each
// failed conclusion (at most two such elements; none in B; cosegments
// through one have size 4 and meet B exactly in {x,y}; a 4-element cosegment
// meeting B in {x,y} confines all strong elements; unstable series pairs
// meet B inside {x,y}).
struct AuditViolation {
  std::string lemma;
  std::string detail;
};
struct StrongElementReport {
  std::set<std::string> strong_outside_xy;
  std::vector<AuditViolation> violations;

  bool ok() const { return violations.empty(); }
};
StrongElementReport strong_element_audit(const SetupContext& ctx);

// For z robust but not strong (NotRobustNonStrong otherwise): the z-closed
// vertical 3-separation through z — of M\a,b when z is in B, of its dual
// when z is in B* — with |Y n support(N)| <= 1, the unique non-flexible
// element of Y - s_prime (if any) moved to the X side, and s_prime inside Y
// verified. NoVerticalSeparation when no vertical 3-separation through z
// exists.
SeparationRecord good_separation(const SetupContext& ctx, const std::string& z);

// Witnessing structures for one satisfied outcome clause.
struct OutcomeEvidence {
  int size_m = 0, size_n = 0;
  int rank_m = 0, rank_n = 0;
  std::optional<std::pair<std::string, std::string>> xy;  // the pair the clause holds for
  std::optional<std::set<std::string>> basis;      // the basis the clause holds for
  std::optional<std::string> z;                    // strong element (z_1 for the fan case)
  std::optional<std::string> z2;                   // fan case second element
  std::optional<std::set<std::string>> triad;      // {x,y,z}
  std::optional<std::vector<std::string>> fan;     // (z_2,z_1,x,y)
  std::optional<std::set<std::string>> cocircuit;  // {a,b,x,y,z}
  std::optional<std::set<std::string>> triangle;   // {p,x,y} inside the cocircuit
  std::optional<std::string> cocircuit_z;          // which fan element the cocircuit used
  int robust_outside_xy = -1;
};

struct OutcomeVerdict {
  bool thm1_a = false, thm1_b_i = false, thm1_b_ii = false, thm1_b_iii = false;
  bool thm2_a = false, thm2_b = false, thm2_c = false;
  std::map<std::string, OutcomeEvidence> evidence;  // keyed 1a, 1b_i, ..., 2c
  // classify_mainthm2: description of the instance the flags refer to
  // ("M" or "wye-delta:<triangle of M>") and its deletion pair.
  std::string instance;
  std::optional<std::pair<std::string, std::string>> pair;
};

// Evaluates the first theorem's outcome predicates on the supplied context:
// (a) the size bound; (b)(i)-(iii) over candidate bases (the supplied one,
// the unconstrained robust-basis winner, and each triad-constrained winner).
// All satisfied outcomes are flagged with evidence.
OutcomeVerdict classify_mainthm1(const SetupContext& ctx);

// Evaluates the second theorem: outcomes (a) size, (b) rank, (c) the
// fragile robust-basis clause, for (M,N) with the supplied pair first, then
// every Y-delta exchange of M* (per triad) with N*, over deletion pairs
// making the candidate 3-connected with the minor; stops at the first
// candidate satisfying an outcome.
OutcomeVerdict classify_mainthm2(const SetupContext& ctx);

// The hypotheses of the non-representability certificate, evaluated as
// stated: M_B[C] strictly N-fragile; a in Z1-Z2 and b in Z2-Z1;
// C u {x,y} inside Z inside Z1 n Z2; M_B[Z] connected; M_B[Z1] and M_B[Z2]
// N-stable; {a,b,x,y} incriminates the restricted matrix.
struct NotRepCertCheck {
  bool fragile = false;
  bool i = false, ii = false, iii = false, iv = false, v = false, vi = false;

  bool all() const { return fragile && i && ii && iii && iv && v && vi; }
};
NotRepCertCheck check_notrepcert_hypotheses(const SetupContext& ctx,
                                            const std::set<std::string>& c,
                                            const std::set<std::string>& z,
                                            const std::set<std::string>& z1,
                                            const std::set<std::string>& z2);

// All B0 x B0* matrices over GF(q) representing M (B0 the first basis),
// entries forced on the fundamental-circuit support, a spanning forest of
// the support normalized to one, deduplicated by scaling equivalence.
// q must be 2, 3, 4 or 5; r(M) * (|E|-r(M)) <= 12 (TooLarge);
// NotRepresentable when the enumeration comes out empty.
std::vector<PMatrix> enumerate_representations(const Matroid& m, int q);

// Finite-field gesture at the stabilizer condition: over all representation
// pairs of M from enumerate_representations whose restrictions to the kept
// set of the first N-minor embedding are scaling-equivalent, the full
// matrices are scaling-equivalent too. Vacuously true when M has no
// representation over GF(q).
bool stabilizer_check_finite(const Matroid& n, const Matroid& m, int q);

}  // namespace mfrag
