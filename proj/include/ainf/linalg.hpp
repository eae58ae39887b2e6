#pragma once

#include <optional>
#include <vector>

#include "ainf/rational.hpp"

namespace ainf {

// Small dense exact matrix, row-major.  This backs homology ranks, particular
// solutions, and kernel bases; pivoting is always first-index so results are
// deterministic.
class Matrix {
 public:
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Rational& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

 private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

struct Rref {
  Matrix m;
  std::vector<int> pivot_cols;  // column of the pivot in each nonzero row
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

// Reduced row echelon form, first nonzero pivot per column order.
Rref rref(Matrix m);

// Basis of the kernel of m (as column-coefficient vectors), one vector per
// free column, in column order; the free coordinate is set to 1.
std::vector<std::vector<Rational>> kernel_basis(const Rref& r);

// One particular solution of m x = b, or nullopt if inconsistent.  Free
// coordinates are set to 0 (first-pivot determinism).
std::optional<std::vector<Rational>> solve(const Matrix& m,
                                           const std::vector<Rational>& b);

// Inverse of a square matrix, or nullopt if singular.
std::optional<Matrix> invert(const Matrix& m);

}  // namespace ainf
