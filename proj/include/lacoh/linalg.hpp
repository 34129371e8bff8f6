#pragma once

#include "lacoh/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace lacoh {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatQ = Mat<Rational>;
using VecQ = Vec<Rational>;

struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// p-adic audit of elimination pivots; p == 0 disables it
struct PivotLog {
  long p = 0;
  int M = 0;
  std::vector<int> valuations;
};

struct Echelon {
  MatQ rref;
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

Echelon row_echelon(MatQ A, PivotLog* log = nullptr);
int rank(const MatQ& A, PivotLog* log = nullptr);
Rational determinant(MatQ A);
MatQ kernel_basis(const MatQ& A);
// rows spanning {y : y A = 0}
MatQ left_kernel_basis(const MatQ& A);
std::optional<VecQ> solve(const MatQ& A, const VecQ& b);
bool in_column_space(const MatQ& A, const MatQ& B);
MatQ hcat(const MatQ& A, const MatQ& B);
MatQ vcat(const MatQ& A, const MatQ& B);

// Q-linear expansion of a family-ring matrix in the basis (v, X_1 v, ..., X_r v)
MatQ expand(const Mat<FamilyElem>& M, int r);
inline MatQ expand(const MatQ& M, int) { return M; }

Mat<FamilyElem> lift(const MatQ& M);
MatQ specialize(const Mat<FamilyElem>& M, const std::vector<Rational>& point);
inline MatQ specialize(const MatQ& M, const std::vector<Rational>&) { return M; }

template <class S>
bool is_zero_matrix(const Mat<S>& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (!is_zero(M(i, j))) return false;
  return true;
}

template <class S>
Mat<S> zero_matrix(Eigen::Index r, Eigen::Index c) {
  Mat<S> M(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) M(i, j) = S(0);
  return M;
}

template <class S>
Mat<S> identity_matrix(Eigen::Index n) {
  Mat<S> M = zero_matrix<S>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) M(i, i) = S(1);
  return M;
}

// product that tolerates empty operands
template <class S>
Mat<S> mul(const Mat<S>& A, const Mat<S>& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("mul: shape mismatch");
  if (A.rows() == 0 || B.cols() == 0 || A.cols() == 0) return zero_matrix<S>(A.rows(), B.cols());
  return A * B;
}

}  // namespace lacoh
