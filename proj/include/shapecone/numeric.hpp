#ifndef SHAPECONE_NUMERIC_HPP
#define SHAPECONE_NUMERIC_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <optional>
#include <stdexcept>

namespace shapecone {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Rational = boost::multiprecision::mpq_rational;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// Single tolerance knob for every floating sign decision downstream.
double& epsilon();

inline int sign_of(double x, double eps) { return x > eps ? 1 : (x < -eps ? -1 : 0); }
inline int sign_of(double x) { return sign_of(x, epsilon()); }
inline int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

struct Signature {
  int positive = 0;
  int zero = 0;
  int negative = 0;
  bool operator==(const Signature&) const = default;
};

struct NotSymmetric : std::runtime_error {
  NotSymmetric() : std::runtime_error("matrix is not symmetric within tolerance") {}
};

namespace detail {

// Row echelon with full pivoting; returns rank and fills pivot columns.
// Works for double (threshold pivoting) and Rational (exact zero tests).
template <typename Mat>
int echelon(Mat& A, std::vector<int>& pivot_cols, double eps) {
  using Scalar = typename Mat::Scalar;
  const int rows = static_cast<int>(A.rows());
  const int cols = static_cast<int>(A.cols());
  pivot_cols.clear();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    double best_mag = 0;
    for (int i = r; i < rows; ++i) {
      double mag = static_cast<double>(abs(A(i, c)));
      if (mag > best_mag) { best_mag = mag; best = i; }
    }
    bool nonzero;
    if constexpr (std::is_same_v<Scalar, double>) {
      nonzero = best >= 0 && best_mag > eps;
    } else {
      nonzero = best >= 0 && best_mag > 0;
    }
    if (!nonzero) continue;
    A.row(r).swap(A.row(best));
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      Scalar f = A(i, c) / A(r, c);
      if (f != Scalar(0)) A.row(i) -= f * A.row(r);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return r;
}

}  // namespace detail

template <typename Mat>
int rank_of(const Mat& M, double eps) {
  if (M.size() == 0) return 0;
  Mat A = M;
  if constexpr (std::is_same_v<typename Mat::Scalar, double>) {
    double scale = A.template lpNorm<Eigen::Infinity>();
    if (scale > 0) A /= scale;
  }
  std::vector<int> piv;
  return detail::echelon(A, piv, eps);
}

template <typename Mat>
int rank_of(const Mat& M) { return rank_of(M, epsilon()); }

// Basis of {x : Mx = 0}, one kernel vector per column. Zero kernel gives a
// matrix with 0 columns.
template <typename Mat>
Mat kernel_basis(const Mat& M, double eps) {
  using Scalar = typename Mat::Scalar;
  const int cols = static_cast<int>(M.cols());
  Mat A = M;
  if constexpr (std::is_same_v<Scalar, double>) {
    double scale = A.template lpNorm<Eigen::Infinity>();
    if (scale > 0) A /= scale;
  }
  std::vector<int> piv;
  int r = detail::echelon(A, piv, eps);
  std::vector<int> free_cols;
  {
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    for (int c = 0; c < cols; ++c)
      if (!is_piv[c]) free_cols.push_back(c);
  }
  Mat K(cols, static_cast<int>(free_cols.size()));
  K.setZero();
  for (int j = 0; j < static_cast<int>(free_cols.size()); ++j) {
    int fc = free_cols[j];
    K(fc, j) = Scalar(1);
    for (int i = 0; i < r; ++i) K(piv[i], j) = -A(i, fc) / A(i, piv[i]);
  }
  return K;
}

template <typename Mat>
Mat kernel_basis(const Mat& M) { return kernel_basis(M, epsilon()); }

// Least-residual solve; empty optional when the residual exceeds
// eps * (|M||x| + |b|).
std::optional<Vector> solve_linear(const Matrix& M, const Vector& b, double eps);
std::optional<Vector> solve_linear(const Matrix& M, const Vector& b);
std::optional<RatVector> solve_linear(const RatMatrix& M, const RatVector& b);

// Inertia of a symmetric form: eigenvalue counting for double, symmetric
// Gaussian congruence for rationals (eigen-free).
Signature symmetric_signature(const Matrix& Q, double eps);
Signature symmetric_signature(const Matrix& Q);
Signature symmetric_signature(const RatMatrix& Q);

Matrix to_double(const RatMatrix& M);
Vector to_double(const RatVector& v);

}  // namespace shapecone

#endif
