#pragma once

#include <vector>

#include "schubcell/poly.hpp"

namespace schubcell {

// Square matrix of rational functions.
class RatMatrix {
 public:
  RatMatrix() = default;
  explicit RatMatrix(size_t n) : n_(n), e_(n * n) {}
  static RatMatrix identity(size_t n);

  size_t size() const { return n_; }
  RatFunc& at(size_t i, size_t j) { return e_[i * n_ + j]; }
  const RatFunc& at(size_t i, size_t j) const { return e_[i * n_ + j]; }

  RatMatrix transposed() const;

 private:
  size_t n_ = 0;
  std::vector<RatFunc> e_;
};

enum class DetMethod {
  laplace,       // memoized cofactor expansion, rows ordered sparsest-first
  elimination,   // fraction-free style elimination cross-check
};

RatFunc determinant(const RatMatrix& m, DetMethod method = DetMethod::laplace);

// Exact determinant of a numeric matrix by fraction elimination.
mpq_class determinant(std::vector<std::vector<mpq_class>> m);

// Parity of an r x r 0/1 permutation submatrix given as per-row column
// positions (-1 for an empty row); 0 if the matrix is singular.
int permutation_submatrix_det(const std::vector<int>& one_col_per_row);

}  // namespace schubcell
