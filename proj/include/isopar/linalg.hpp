// Shared dense linear algebra helpers on top of Eigen.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace isopar {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline double max_abs(const Mat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const Vec& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

// Sorted eigenvalues of a symmetric matrix (ascending).
inline Vec sym_eigenvalues(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  return es.eigenvalues();
}

struct SymEigen {
  Vec values;   // ascending
  Mat vectors;  // columns
};

inline SymEigen sym_eigen(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Columns of an orthonormal basis for the orthogonal complement of span(cols).
// cols is expected to have orthonormal columns.
inline Mat orthonormal_complement(const Mat& cols) {
  const int n = static_cast<int>(cols.rows());
  const int r = static_cast<int>(cols.cols());
  Eigen::HouseholderQR<Mat> qr(cols);
  Mat q = qr.householderQ();
  return q.rightCols(n - r);
}

// Gram-Schmidt with column pruning: orthonormal basis of the column span.
inline Mat orthonormal_span(const Mat& cols, double tol = 1e-10) {
  Mat basis(cols.rows(), cols.cols());
  int r = 0;
  for (int j = 0; j < cols.cols(); ++j) {
    Vec v = cols.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < r; ++i) v -= basis.col(i).dot(v) * basis.col(i);
    double s = v.norm();
    if (s > tol) basis.col(r++) = v / s;
  }
  return basis.leftCols(r);
}

// Numerical rank with a relative singular value threshold.
inline int numerical_rank(const Mat& a, double rel_tol = 1e-8) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

inline std::vector<double> singular_values(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

// Largest principal angle (radians) between equal-dimensional subspaces
// given by orthonormal column bases.
inline double max_principal_angle(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("subspace dimensions differ");
  if (a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a.transpose() * b);
  double c = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
  return std::acos(c);
}

// Max deviation of the Gram matrix of cols from the identity.
inline double gram_residual(const Mat& cols) {
  Mat g = cols.transpose() * cols;
  g -= Mat::Identity(cols.cols(), cols.cols());
  return max_abs(g);
}

// Basis of {v in span(basis) : op v = 0} where "zero" means singular value
// below tol. basis has orthonormal columns.
inline Mat restricted_kernel(const Mat& op, const Mat& basis, double tol) {
  if (basis.cols() == 0) return basis;
  Mat m = op * basis;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int first_zero = 0;
  while (first_zero < s.size() && s[first_zero] > tol) ++first_zero;
  int dim = static_cast<int>(basis.cols()) - first_zero;
  // Right singular vectors are ordered by decreasing singular value, so the
  // trailing ones span the kernel directions.
  if (dim <= 0) return Mat(basis.rows(), 0);
  return basis * svd.matrixV().rightCols(dim);
}

}  // namespace isopar
