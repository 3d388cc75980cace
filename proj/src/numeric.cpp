#include "shapecone/numeric.hpp"

namespace shapecone {

double& epsilon() {
  static double eps = 1e-9;
  return eps;
}

std::optional<Vector> solve_linear(const Matrix& M, const Vector& b, double eps) {
  Vector x = M.completeOrthogonalDecomposition().solve(b);
  double residual = (M * x - b).norm();
  double scale = M.norm() * x.norm() + b.norm();
  if (residual > eps * std::max(scale, 1.0)) return std::nullopt;
  return x;
}

std::optional<Vector> solve_linear(const Matrix& M, const Vector& b) {
  return solve_linear(M, b, epsilon());
}

std::optional<RatVector> solve_linear(const RatMatrix& M, const RatVector& b) {
  RatMatrix A(M.rows(), M.cols() + 1);
  A.leftCols(M.cols()) = M;
  A.col(M.cols()) = b;
  std::vector<int> piv;
  int r = detail::echelon(A, piv, 0.0);
  RatVector x = RatVector::Zero(M.cols());
  for (int i = 0; i < r; ++i) {
    if (piv[i] == M.cols()) return std::nullopt;  // pivot in the b column
    x(piv[i]) = A(i, M.cols()) / A(i, piv[i]);
  }
  if (!((M * x - b).isZero(Rational(0)))) return std::nullopt;
  return x;
}

Signature symmetric_signature(const Matrix& Q, double eps) {
  double scale = Q.size() ? Q.cwiseAbs().maxCoeff() : 0.0;
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > eps * std::max(scale, 1.0))
    throw NotSymmetric();
  Matrix S = 0.5 * (Q + Q.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
  Signature sig;
  double thresh = eps * std::max(scale, 1.0);
  for (int i = 0; i < S.rows(); ++i) {
    double lam = es.eigenvalues()(i);
    if (lam > thresh) ++sig.positive;
    else if (lam < -thresh) ++sig.negative;
    else ++sig.zero;
  }
  return sig;
}

Signature symmetric_signature(const Matrix& Q) {
  return symmetric_signature(Q, epsilon());
}

// Symmetric congruence reduction: repeatedly pick a nonzero diagonal pivot
// (after a symmetrizing row+column move when the diagonal is all zero) and
// clear its row and column.
Signature symmetric_signature(const RatMatrix& Q) {
  if (!(Q - Q.transpose()).isZero(Rational(0))) throw NotSymmetric();
  RatMatrix A = Q;
  const int m = static_cast<int>(A.rows());
  Signature sig;
  std::vector<bool> done(m, false);
  for (int step = 0; step < m; ++step) {
    int p = -1;
    for (int i = 0; i < m; ++i)
      if (!done[i] && A(i, i) != 0) { p = i; break; }
    if (p < 0) {
      int a = -1, b = -1;
      for (int i = 0; i < m && a < 0; ++i)
        for (int j = i + 1; j < m && a < 0; ++j)
          if (!done[i] && !done[j] && A(i, j) != 0) { a = i; b = j; }
      if (a < 0) break;  // remaining block is zero
      A.row(a) += A.row(b);
      A.col(a) += A.col(b);
      p = a;
    }
    Rational d = A(p, p);
    if (d > 0) ++sig.positive; else ++sig.negative;
    for (int i = 0; i < m; ++i) {
      if (i == p || done[i] || A(i, p) == 0) continue;
      Rational f = A(i, p) / d;
      A.row(i) -= f * A.row(p);
      A.col(i) -= f * A.col(p);
    }
    done[p] = true;
  }
  sig.zero = m - sig.positive - sig.negative;
  return sig;
}

Matrix to_double(const RatMatrix& M) {
  Matrix D(M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) D(i, j) = static_cast<double>(M(i, j));
  return D;
}

Vector to_double(const RatVector& v) {
  Vector D(v.size());
  for (int i = 0; i < v.size(); ++i) D(i) = static_cast<double>(v(i));
  return D;
}

}  // namespace shapecone
