#include "lacoh/linalg.hpp"

namespace lacoh {

Echelon row_echelon(MatQ A, PivotLog* log) {
  Echelon E;
  const Eigen::Index m = A.rows(), n = A.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < n && row < m; ++col) {
    Eigen::Index piv = -1;
    int best = kInfValuation;
    for (Eigen::Index i = row; i < m; ++i) {
      if (A(i, col) == 0) continue;
      if (log == nullptr || log->p == 0) {
        piv = i;
        break;
      }
      int v = padic_valuation(A(i, col), log->p);
      if (piv < 0 || v < best) {
        piv = i;
        best = v;
      }
    }
    if (piv < 0) continue;
    if (log != nullptr && log->p != 0) {
      if (log->M > 0 && best >= log->M)
        throw PrecisionExhausted("pivot valuation " + std::to_string(best) + " reaches precision " +
                                 std::to_string(log->M));
      log->valuations.push_back(best);
    }
    if (piv != row) A.row(piv).swap(A.row(row));
    Rational inv = 1 / A(row, col);
    for (Eigen::Index j = col; j < n; ++j) A(row, j) *= inv;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == row || A(i, col) == 0) continue;
      Rational f = A(i, col);
      for (Eigen::Index j = col; j < n; ++j)
        if (A(row, j) != 0) A(i, j) -= f * A(row, j);
    }
    E.pivot_cols.push_back(static_cast<int>(col));
    ++row;
  }
  E.rref = std::move(A);
  return E;
}

int rank(const MatQ& A, PivotLog* log) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  return row_echelon(A, log).rank();
}

MatQ kernel_basis(const MatQ& A) {
  const Eigen::Index n = A.cols();
  if (A.rows() == 0) return identity_matrix<Rational>(n);
  Echelon E = row_echelon(A);
  std::vector<bool> is_piv(n, false);
  for (int c : E.pivot_cols) is_piv[c] = true;
  std::vector<int> free;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_piv[c]) free.push_back(static_cast<int>(c));
  MatQ K = zero_matrix<Rational>(n, static_cast<Eigen::Index>(free.size()));
  for (size_t k = 0; k < free.size(); ++k) {
    K(free[k], k) = 1;
    for (size_t r = 0; r < E.pivot_cols.size(); ++r) K(E.pivot_cols[r], k) = -E.rref(r, free[k]);
  }
  return K;
}

MatQ left_kernel_basis(const MatQ& A) {
  MatQ K = kernel_basis(A.transpose());
  return K.transpose();
}

std::optional<VecQ> solve(const MatQ& A, const VecQ& b) {
  const Eigen::Index n = A.cols();
  MatQ Ab(A.rows(), n + 1);
  if (n > 0) Ab.leftCols(n) = A;
  Ab.col(n) = b;
  Echelon E = row_echelon(Ab);
  VecQ x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = 0;
  for (size_t r = 0; r < E.pivot_cols.size(); ++r) {
    if (E.pivot_cols[r] == n) return std::nullopt;
    x(E.pivot_cols[r]) = E.rref(r, n);
  }
  return x;
}

bool in_column_space(const MatQ& A, const MatQ& B) {
  if (B.cols() == 0) return true;
  if (A.cols() == 0) return is_zero_matrix(B);
  return rank(hcat(A, B)) == rank(A);
}

MatQ hcat(const MatQ& A, const MatQ& B) {
  if (A.cols() == 0) return B;
  if (B.cols() == 0) return A;
  if (A.rows() != B.rows()) throw std::invalid_argument("hcat: row mismatch");
  MatQ C(A.rows(), A.cols() + B.cols());
  C.leftCols(A.cols()) = A;
  C.rightCols(B.cols()) = B;
  return C;
}

MatQ vcat(const MatQ& A, const MatQ& B) {
  if (A.rows() == 0) return B;
  if (B.rows() == 0) return A;
  if (A.cols() != B.cols()) throw std::invalid_argument("vcat: column mismatch");
  MatQ C(A.rows() + B.rows(), A.cols());
  C.topRows(A.rows()) = A;
  C.bottomRows(B.rows()) = B;
  return C;
}

MatQ expand(const Mat<FamilyElem>& M, int r) {
  const Eigen::Index m = M.rows(), n = M.cols();
  MatQ E = zero_matrix<Rational>((1 + r) * m, (1 + r) * n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const FamilyElem& x = M(i, j);
      if (x.is_zero()) continue;
      for (int b = 0; b <= r; ++b) E(b * m + i, b * n + j) = x.constant();
      for (int k = 0; k < r; ++k) E((k + 1) * m + i, j) = x.linear(k);
    }
  return E;
}

Mat<FamilyElem> lift(const MatQ& M) {
  Mat<FamilyElem> R(M.rows(), M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) R(i, j) = FamilyElem(M(i, j));
  return R;
}

MatQ specialize(const Mat<FamilyElem>& M, const std::vector<Rational>& point) {
  MatQ R(M.rows(), M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) R(i, j) = M(i, j).evaluate(point);
  return R;
}

}  // namespace lacoh

namespace lacoh {

Rational determinant(MatQ A) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("determinant of a non-square matrix");
  Rational det = 1;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    while (piv < n && A(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      A.row(piv).swap(A.row(c));
      det = -det;
    }
    det *= A(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (A(r, c) == 0) continue;
      Rational f = A(r, c) / A(c, c);
      for (Eigen::Index k = c; k < n; ++k) A(r, k) -= f * A(c, k);
    }
  }
  return det;
}

}  // namespace lacoh
