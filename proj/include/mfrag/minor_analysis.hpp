#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mfrag/connectivity.hpp"
#include "mfrag/matroid.hpp"

namespace mfrag {

// A witness that N is a minor of M: M / contracted \ deleted is isomorphic
// to N.
struct MinorRecipe {
  std::set<std::string> contracted;
  std::set<std::string> deleted;
};

// Per-element taxonomy of M relative to a minor N. "deletable" means M\e
// keeps an N-minor, "contractible" means M/e does; "flexible" is both and
// "essential" is neither. When a basis B is supplied, "robust" means the
// removal matching e's side of B (contract for e in B, delete otherwise)
// keeps an N-minor, and "strong" additionally requires the simplification
// resp. cosimplification of that removal to be 3-connected with an N-minor.
struct ElementClassification {
  std::string element;
  bool deletable = false;
  bool contractible = false;
  bool flexible = false;
  bool essential = false;
  std::optional<bool> robust;
  std::optional<bool> strong;
};

// Search constraints for robust_basis_search: the basis must contain x and
// y, and when triad_z is given, {x, y, triad_z} must be a triad with triad_z
// outside the basis and strong with respect to it.
struct RobustBasisConstraints {
  std::string x;
  std::string y;
  std::optional<std::string> triad_z;
};

struct RobustBasisResult {
  std::set<std::string> basis;
  int robust_count = 0;                  // robust elements outside {x, y}
  std::set<std::string> strong_outside;  // strong elements outside {x, y}
};

// An ordered removal schedule from M down to N. Applying the first i
// elements of `order` (each contracted or deleted according to `recipe`)
// leaves a 3-connected matroid for every i.
struct SplitterSequence {
  MinorRecipe recipe;
  std::vector<std::string> order;
};

struct NStableResult {
  bool stable = true;
  std::optional<SeparationRecord> witness;  // a failing 2-separation
};

// First (C, D) with M/C\D isomorphic to N, enumerating contract-set sizes
// ascending and delete-sets in lexicographic order; nullopt when N is not a
// minor of M.
std::optional<MinorRecipe> has_minor(const Matroid& m, const Matroid& n);

// Classification of every element of M relative to N, in label order.
// Throws NoNMinor when M has no N-minor and NotABasis when `basis` is
// supplied but is not a basis of M.
std::vector<ElementClassification> classify_elements(
    const Matroid& m, const Matroid& n,
    const std::optional<std::set<std::string>>& basis = std::nullopt);

// M is N-fragile when no element is N-flexible; strictly N-fragile when it
// is N-fragile and actually has an N-minor.
bool is_fragile(const Matroid& m, const Matroid& n);
bool is_strictly_fragile(const Matroid& m, const Matroid& n);

// Over all bases of Mp containing {x, y} and meeting the triad constraint,
// returns one maximizing the number of robust elements outside {x, y}; ties
// go to the lexicographically smallest basis. Throws NoBasisMeetsConstraints
// when no basis qualifies.
RobustBasisResult robust_basis_search(const Matroid& mp, const Matroid& n,
                                      const RobustBasisConstraints& constraints);

// A splitter sequence for N in M, found greedily (single removals keeping
// 3-connectivity and an N-minor, deletions tried before contractions) with
// backtracking. Requires M 3-connected with an N-minor and N 3-connected
// with at least 4 elements, neither a wheel nor a whirl (PreconditionViolated
// otherwise). nullopt only if the search exhausts, which the preconditions
// rule out for sound inputs.
std::optional<SplitterSequence> splitter_sequence(const Matroid& m, const Matroid& n);

// The part of the 1- or 2-sum decomposition of M induced by the separation
// (side, E - side): M restricted to `side` with `basepoint` adjoined freely
// on the guts of the separation. Re-2-summing the two parts on the basepoint
// recovers M.
Matroid two_sum_part(const Matroid& m, const std::set<std::string>& side,
                     const std::string& basepoint);

// M is N-stable when for every 2-separation (X, Y) with |X ∩ E(N)| ≤ 1 the
// decomposition part on X is binary. Requires M connected with an N-minor
// (NoNMinor) and N non-binary (NNotApplicable).
NStableResult n_stable(const Matroid& m, const Matroid& n);

// The non-trivial series classes S of M\e for which S ∪ {e} extends to a
// rank-2 four-element set using a further element of cl(S ∪ {e}), i.e. sits
// inside a four-point-line 2-sum factor. Requires M\e 3-connected up to
// series pairs with an N-minor (PreconditionViolated).
std::vector<std::set<std::string>> unstable_series_pairs(const Matroid& m_with_e,
                                                         const std::string& e,
                                                         const Matroid& n);

}  // namespace mfrag
