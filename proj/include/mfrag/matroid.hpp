#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mfrag/error.hpp"

namespace mfrag {

// A matroid on at most 16 labelled elements, stored as the explicit family of
// basis bitmasks over the ordered ground list.  The full rank table (2^n
// bytes) is computed on construction, so every instance is immutable and
// cheap to query afterwards.
class Matroid {
 public:
  // Validating constructor: checks sizes, label membership and the basis
  // exchange axiom exhaustively (ExchangeAxiomViolation carries a witnessing
  // pair).
  static Matroid from_bases(const std::vector<std::string>& ground,
                            const std::vector<std::set<std::string>>& bases);
  // Mask-level constructor used internally and by generators; set validate
  // for untrusted families.
  static Matroid from_masks(std::vector<std::string> ground, std::vector<uint32_t> bases,
                            bool validate);

  int size() const { return static_cast<int>(ground_.size()); }
  int rank() const { return rank_; }
  int corank() const { return size() - rank_; }
  const std::vector<std::string>& ground() const { return ground_; }
  const std::vector<uint32_t>& bases() const { return bases_; }
  uint32_t full_mask() const { return size() == 0 ? 0 : (1u << size()) - 1; }

  const std::string& label(int i) const { return ground_[i]; }
  int index(const std::string& label) const;  // UnknownLabel
  uint32_t mask_of(const std::set<std::string>& labels) const;
  std::set<std::string> labels_of(uint32_t mask) const;
  std::vector<std::string> label_list_of(uint32_t mask) const;  // ground order

  int rank_of(uint32_t s) const { return rank_table_[s]; }
  int corank_of(uint32_t s) const;  // rank in the dual
  bool independent(uint32_t s) const { return rank_table_[s] == __builtin_popcount(s); }
  bool is_basis(uint32_t s) const;
  uint32_t closure_of(uint32_t s) const;
  uint32_t coclosure_of(uint32_t s) const;
  bool is_circuit(uint32_t s) const;
  bool is_cocircuit(uint32_t s) const;
  // Connectivity function lambda(S) = r(S) + r(E-S) - r(E); no side checks.
  int lambda_of(uint32_t s) const;

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.ground_ == b.ground_ && a.bases_ == b.bases_;
  }

 private:
  Matroid() = default;
  void build_tables();

  std::vector<std::string> ground_;
  std::vector<uint32_t> bases_;  // sorted ascending
  int rank_ = 0;
  std::vector<uint8_t> rank_table_;
};

// Compares index sets of equal size lexicographically (as sorted tuples).
bool mask_lex_less(uint32_t a, uint32_t b);
// Enumeration order used everywhere: ascending size, then lexicographic.
std::vector<uint32_t> subsets_in_order(uint32_t universe);

Matroid matroid_from_bases(const std::vector<std::string>& ground,
                           const std::vector<std::set<std::string>>& bases);

int rank(const Matroid& m, const std::set<std::string>& s);
std::set<std::string> closure(const Matroid& m, const std::set<std::string>& s);
std::set<std::string> coclosure(const Matroid& m, const std::set<std::string>& s);

// Ascending by size, then lexicographic on sorted label-index tuples.
std::vector<std::set<std::string>> circuits(const Matroid& m);
std::vector<std::set<std::string>> cocircuits(const Matroid& m);
std::vector<uint32_t> circuit_masks(const Matroid& m);
std::vector<uint32_t> cocircuit_masks(const Matroid& m);

Matroid dual(const Matroid& m);
// EmptyGroundSet when every element would be removed.
Matroid deletion(const Matroid& m, const std::set<std::string>& s);
Matroid contraction(const Matroid& m, const std::set<std::string>& s);
// M_B[Z] = M / (B - Z) \ (B* - Z); B must be a basis.
Matroid minor_b(const Matroid& m, const std::set<std::string>& b, const std::set<std::string>& z);

struct SimplificationResult {
  Matroid m;
  // representative (minimum in ground order) -> its parallel/series class
  std::map<std::string, std::set<std::string>> classes;
  std::set<std::string> removed_loops;  // coloops for cosimplify
};
SimplificationResult simplify(const Matroid& m);
SimplificationResult cosimplify(const Matroid& m);

// Deterministic: first isomorphism found in backtracking order after
// invariant refinement (rank, basis count, basis degrees, small-circuit
// degrees per element).
std::optional<std::map<std::string, std::string>> isomorphic(const Matroid& a, const Matroid& b);

// Relabel ground elements; mapping must be injective on the ground set.
Matroid relabel(const Matroid& m, const std::map<std::string, std::string>& mapping);

Matroid two_sum(const Matroid& m1, const Matroid& m2, const std::string& p);

}  // namespace mfrag
