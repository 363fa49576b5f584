#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mfrag/matroid.hpp"
#include "mfrag/partial_field.hpp"

namespace mfrag {

// A matrix over a partial field with labelled rows and columns.  Row and
// column label sets are disjoint; together they form the ground set of the
// represented matroid.  Immutable; all operations return new matrices.
class PMatrix {
 public:
  PMatrix(PartialField pf, std::vector<std::string> rows, std::vector<std::string> cols,
          std::vector<PFElement> entries);  // row-major

  const PartialField& field() const { return pf_; }
  const std::vector<std::string>& row_labels() const { return rows_; }
  const std::vector<std::string>& col_labels() const { return cols_; }
  int nrows() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return static_cast<int>(cols_.size()); }
  const PFElement& at(int i, int j) const { return entries_[i * ncols() + j]; }
  const PFElement& at(const std::string& r, const std::string& c) const;
  int row_index(const std::string& label) const;  // -1 when absent
  int col_index(const std::string& label) const;

  friend bool operator==(const PMatrix& a, const PMatrix& b) {
    return a.pf_.same(b.pf_) && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  PartialField pf_;
  std::vector<std::string> rows_, cols_;
  std::vector<PFElement> entries_;
};

// det A[Z]: the square submatrix selected by Z (row part X n Z, column part
// Y n Z in stored order).  NonSquareSelection unless |X n Z| = |Y n Z|.
// The empty selection has determinant one.
PFElement subdeterminant(const PMatrix& a, const std::set<std::string>& z);

struct PMatrixViolation {
  std::set<std::string> z;
  PFElement det;
};

// First violating selection in (size, lexicographic) order, or nullopt when
// every square subdeterminant lies in the partial field.
std::optional<PMatrixViolation> pmatrix_violation(const PMatrix& a);
bool is_pmatrix(const PMatrix& a);

// Pivot on a unit entry (x,y): x leaves the row labels for y, y's column
// takes x, entries per the four-case rule.  ZeroPivotEntry on a zero pivot.
PMatrix pivot(const PMatrix& a, const std::string& x, const std::string& y);

// Multiply one row or column (addressed by label) by a unit factor.
PMatrix scale(const PMatrix& a, const std::string& line, const PFElement& factor);

// Reorder rows/columns; both arguments must be permutations of the stored
// label lists (labels travel with their lines).
PMatrix permute(const PMatrix& a, const std::vector<std::string>& row_order,
                const std::vector<std::string>& col_order);

struct ScalingCertificate {
  std::map<std::string, PFElement> row_factors, col_factors;
};

// Per-line unit factors turning a1 into a2, when the supports agree and the
// factors propagate consistently over each connected component of the
// support graph.  LabelMismatch when the label sets differ.
std::optional<ScalingCertificate> scaling_equivalent(const PMatrix& a1, const PMatrix& a2);

// Submatrix keeping the given labels (rows and columns).
PMatrix submatrix(const PMatrix& a, const std::set<std::string>& keep);
// Submatrix dropping the given labels.
PMatrix drop(const PMatrix& a, const std::set<std::string>& out);

// M[I|A]: ground set = rows then columns in stored order; B is a basis iff
// B = X \triangle Z for a square selection Z with det A[Z] != 0.
// NotAPMatrix (carrying the violating selection) when A is not a P-matrix.
Matroid matroid_from_pmatrix(const PMatrix& a);

}  // namespace mfrag
