#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfrag/matroid.hpp"

namespace mfrag {

// A (possibly vertical) separation, optionally split around a middle
// element z as in (X, z, Y). The lambda value is computed on side_x with
// the middle, when present, counted on the X side.
struct SeparationRecord {
  std::set<std::string> side_x;
  std::optional<std::string> middle;
  std::set<std::string> side_y;
  int lambda = 0;
  bool exact = false;
  bool vertical = false;
  bool z_closed_y = false;
  std::set<std::string> guts;    // cl(X) ∩ cl(Y)
  std::set<std::string> coguts;  // cl*(X) ∩ cl*(Y)
};

// r(S) + r(E-S) - r(E); DegenerateSide unless ∅ ⊂ S ⊂ E.
int lambda(const Matroid& m, const std::set<std::string>& s);

bool is_connected(const Matroid& m);
// Literal definition: no 1- or 2-separation, so very small matroids such as
// U(1,2) and U(2,3) count as 3-connected.
bool is_3connected(const Matroid& m);

// All unordered partitions (X,Y) with lambda(X) <= k-1 and both sides of
// size >= min_side; X is the smaller (then lexicographically smaller) side,
// sorted by (|X|, lex X).
std::vector<SeparationRecord> separations(const Matroid& m, int k, int min_side);

// All vertical 3-separations (X,z,Y); empty exactly when si(M/z) is
// 3-connected. Not3Connected if M is not.
std::vector<SeparationRecord> vertical_3seps_through(const Matroid& m, const std::string& z);

struct ClosureFlags {
  bool in_cl = false;
  bool in_clstar = false;
};
ClosureFlags cl_or_clstar_membership(const Matroid& m, const std::set<std::string>& x,
                                     const std::string& e);

// Smallest fully closed (closed and coclosed) superset.
std::set<std::string> fcl(const Matroid& m, const std::set<std::string>& a);

// Y = cl*(Y) and Y = cl(Y) - {z}, equivalently fcl(Y) = Y in M/z.
bool is_z_closed(const Matroid& m, const std::string& z, const std::set<std::string>& y);

// Vertical 3-separation (X,z,Y) with Y z-closed and |Y ∩ hint| small,
// obtained by growing the Y side of some vertical 3-separation through z by
// fcl in M/z. NoVerticalSeparation if none exists (si(M/z) 3-connected).
SeparationRecord z_closed_separation(const Matroid& m, const std::string& z,
                                     const std::set<std::string>& n_ground_hint);

enum class FanType { I, II };
enum class FanEnd { Spoke, Rim };

struct FanRecord {
  std::vector<std::string> ordering;
  bool starts_with_triangle = false;
  bool maximal = false;
  std::optional<FanType> type_relative_to_b;
};

// Consecutive triples alternate triangle/triad, length >= 3.
bool is_fan(const Matroid& m, const std::vector<std::string>& ordering);
bool is_maximal_fan(const Matroid& m, const std::vector<std::string>& ordering);

// All maximal fans, one per reversal class, oriented with the
// lexicographically smaller end first.
std::vector<FanRecord> fans(const Matroid& m);

// Type I when B∩F = {f1,f3}, type II when B∩F = {f1,f3,f4}, trying both
// orientations of a fan of length >= 4 whose first triple is a triangle.
std::optional<FanType> fan_type(const FanRecord& f, const std::set<std::string>& b);

// Kind of an end element of a fan of length >= 4: in the end triangle ->
// spoke, in the end triad -> rim. NotAFan if f is not an end of a fan.
FanEnd fan_end_kind(const Matroid& m, const FanRecord& f, const std::string& elem);

struct Path3Sep {
  // Disjoint parts covering the ground set; every prefix union is exactly
  // 3-separating.
  std::vector<std::set<std::string>> parts;
};

// Orders Z so that (A, z1, ..., zn, B) is a path of 3-separations,
// recursively splitting on the smallest-label middle element.
// HypothesisFailed (carrying the violating element) otherwise.
Path3Sep path_of_3seps(const Matroid& m, const std::set<std::string>& a,
                       const std::set<std::string>& z, const std::set<std::string>& b_side);

struct DetachablePair {
  std::string a, b;
  bool by_deletion = false;
  bool by_contraction = false;
};

// All pairs {a,b} with M\a,b or M/a,b 3-connected. Not3Connected if M is not.
std::vector<DetachablePair> detachable_pairs(const Matroid& m);

}  // namespace mfrag
