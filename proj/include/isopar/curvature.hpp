// Curvature verdicts for a minimal submanifold of the unit sphere, computed
// from its shape operators: the Gauss-equation Ricci operator, the Einstein
// defect, Willmore residuals Trace(Ric S_a), principal curvature spectra, the
// block structure relative to one normal direction, and the coinciding-kernel
// (condition A) test.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "isopar/linalg.hpp"

namespace isopar {

struct ShapeOperatorSet {
  int n = 0;                       // tangent dimension
  std::vector<Mat> ops;            // symmetric n x n, one per normal direction
  std::vector<std::string> labels; // optional, parallel to ops

  int count() const { return static_cast<int>(ops.size()); }
};

inline void check_shape_set(const ShapeOperatorSet& s, double sym_tol = 1e-10) {
  if (s.ops.empty()) throw std::invalid_argument("shape operator set is empty");
  for (const Mat& a : s.ops) {
    if (a.rows() != s.n || a.cols() != s.n)
      throw std::invalid_argument("shape operator dimension mismatch");
    if (max_abs(Mat(a - a.transpose())) > sym_tol)
      throw std::invalid_argument("shape operator is not symmetric");
  }
}

// Sum of squared shape operators; the spectral spread of this matrix is what
// the Einstein question reduces to.
inline Mat squared_shape_sum(const ShapeOperatorSet& s) {
  Mat e = Mat::Zero(s.n, s.n);
  for (const Mat& a : s.ops) e += a * a;
  return e;
}

// Ric = (n-1) I - sum_a S_a^2 (Gauss equation, minimal in the unit sphere).
inline Mat ricci_operator(const ShapeOperatorSet& s) {
  check_shape_set(s);
  return (s.n - 1) * Mat::Identity(s.n, s.n) - squared_shape_sum(s);
}

struct EinsteinReport {
  double lambda_bar = 0;  // mean eigenvalue of sum S_a^2
  double defect = 0;      // max |eig - lambda_bar|
  double spread = 0;      // max eig - min eig
  Vec eigenvalues;        // ascending
};

inline EinsteinReport einstein_defect(const ShapeOperatorSet& s) {
  check_shape_set(s);
  EinsteinReport rep;
  rep.eigenvalues = sym_eigenvalues(squared_shape_sum(s));
  rep.lambda_bar = rep.eigenvalues.mean();
  rep.defect = (rep.eigenvalues.array() - rep.lambda_bar).abs().maxCoeff();
  rep.spread = rep.eigenvalues[rep.eigenvalues.size() - 1] - rep.eigenvalues[0];
  return rep;
}

// r_a = Trace(Ric S_a); the submanifold is Willmore when all vanish.
inline std::vector<double> willmore_residuals(const ShapeOperatorSet& s) {
  Mat ric = ricci_operator(s);
  std::vector<double> r;
  r.reserve(s.ops.size());
  for (const Mat& a : s.ops) r.push_back((ric * a).trace());
  return r;
}

inline double max_willmore_residual(const ShapeOperatorSet& s) {
  double m = 0;
  for (double r : willmore_residuals(s)) m = std::max(m, std::abs(r));
  return m;
}

// Eigenvalues (ascending) of sum_a c_a S_a for a unit coefficient vector.
inline Vec principal_curvature_spectrum(const ShapeOperatorSet& s, const Vec& combo) {
  check_shape_set(s);
  if (combo.size() != s.count())
    throw std::invalid_argument("principal_curvature_spectrum: coefficient count mismatch");
  if (std::abs(combo.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("principal_curvature_spectrum: coefficients must be unit length");
  Mat a = Mat::Zero(s.n, s.n);
  for (int i = 0; i < s.count(); ++i) a += combo[i] * s.ops[i];
  return sym_eigenvalues(a);
}

// Multiset check {0^zeros, 1^ones, (-1)^minus_ones} within tol.
inline bool spectrum_matches(const Vec& eigs, int zeros, int ones, int minus_ones,
                             double tol) {
  if (eigs.size() != zeros + ones + minus_ones) return false;
  std::vector<double> v(eigs.data(), eigs.data() + eigs.size());
  std::sort(v.begin(), v.end());
  int idx = 0;
  for (int i = 0; i < minus_ones; ++i)
    if (std::abs(v[idx++] + 1.0) > tol) return false;
  for (int i = 0; i < zeros; ++i)
    if (std::abs(v[idx++]) > tol) return false;
  for (int i = 0; i < ones; ++i)
    if (std::abs(v[idx++] - 1.0) > tol) return false;
  return true;
}

inline double spectrum_deviation(const Vec& eigs, int zeros, int ones, int minus_ones) {
  if (eigs.size() != zeros + ones + minus_ones)
    throw std::invalid_argument("spectrum_deviation: multiplicity count mismatch");
  std::vector<double> v(eigs.data(), eigs.data() + eigs.size());
  std::sort(v.begin(), v.end());
  double dev = 0;
  int idx = 0;
  for (int i = 0; i < minus_ones; ++i) dev = std::max(dev, std::abs(v[idx++] + 1.0));
  for (int i = 0; i < zeros; ++i) dev = std::max(dev, std::abs(v[idx++]));
  for (int i = 0; i < ones; ++i) dev = std::max(dev, std::abs(v[idx++] - 1.0));
  return dev;
}

// Block structure of the whole set relative to the eigenspaces of one base
// operator. With V_/V0/V+ the (-1)/0/(+1) eigenspaces of S_base, every other
// operator has vanishing diagonal blocks and its two off-kernel blocks
// B_a : V0 -> V+ and C_a : V0 -> V- share their singular values.
struct NormalBlocks {
  Mat A;  // V- -> V+
  Mat B;  // V0 -> V+
  Mat C;  // V0 -> V-
  double max_diagonal_block = 0;
};

struct BlockDecomposition {
  Mat vplus, vminus, vzero;        // orthonormal eigenbases of the base operator
  std::vector<NormalBlocks> blocks; // for every non-base operator
  double max_diagonal_block = 0;
  double max_bc_norm_gap = 0;       // max | ||B||_F - ||C||_F |
};

inline BlockDecomposition isoparametric_blocks(const ShapeOperatorSet& s,
                                               int base_index,
                                               double cluster_tol = 0.3) {
  check_shape_set(s);
  if (base_index < 0 || base_index >= s.count())
    throw std::invalid_argument("isoparametric_blocks: base index out of range");
  SymEigen es = sym_eigen(s.ops[static_cast<size_t>(base_index)]);
  std::vector<int> plus, minus, zero;
  for (int i = 0; i < es.values.size(); ++i) {
    double v = es.values[i];
    if (std::abs(v - 1.0) <= cluster_tol) plus.push_back(i);
    else if (std::abs(v + 1.0) <= cluster_tol) minus.push_back(i);
    else if (std::abs(v) <= cluster_tol) zero.push_back(i);
    else throw std::runtime_error("isoparametric_blocks: eigenvalue outside {0,+-1} clusters");
  }
  auto take = [&](const std::vector<int>& idx) {
    Mat b(s.n, static_cast<int>(idx.size()));
    for (size_t c = 0; c < idx.size(); ++c) b.col(static_cast<int>(c)) = es.vectors.col(idx[c]);
    return b;
  };
  BlockDecomposition out;
  out.vplus = take(plus);
  out.vminus = take(minus);
  out.vzero = take(zero);
  for (int a = 0; a < s.count(); ++a) {
    if (a == base_index) continue;
    const Mat& sa = s.ops[static_cast<size_t>(a)];
    NormalBlocks nb;
    nb.A = out.vplus.transpose() * sa * out.vminus;
    nb.B = out.vplus.transpose() * sa * out.vzero;
    nb.C = out.vminus.transpose() * sa * out.vzero;
    double dpp = max_abs(Mat(out.vplus.transpose() * sa * out.vplus));
    double dmm = max_abs(Mat(out.vminus.transpose() * sa * out.vminus));
    double dzz = max_abs(Mat(out.vzero.transpose() * sa * out.vzero));
    nb.max_diagonal_block = std::max({dpp, dmm, dzz});
    out.max_diagonal_block = std::max(out.max_diagonal_block, nb.max_diagonal_block);
    out.max_bc_norm_gap = std::max(out.max_bc_norm_gap,
                                   std::abs(nb.B.norm() - nb.C.norm()));
    out.blocks.push_back(std::move(nb));
  }
  return out;
}

// Trace of Ric over V+ versus V-; equal for the focal sets handled here.
inline std::pair<double, double> ricci_sum_split(const ShapeOperatorSet& s,
                                                 const BlockDecomposition& d) {
  Mat ric = ricci_operator(s);
  double tp = (d.vplus.transpose() * ric * d.vplus).trace();
  double tm = (d.vminus.transpose() * ric * d.vminus).trace();
  return {tp, tm};
}

struct ConditionAReport {
  bool holds = false;
  std::vector<int> kernel_dims;  // per operator
  int intersection_dim = 0;
};

// True when every operator's kernel has the same dimension and all kernels
// coincide (their intersection has that same dimension).
inline ConditionAReport condition_A_check(const ShapeOperatorSet& s,
                                          double tol = 1e-7) {
  check_shape_set(s);
  ConditionAReport rep;
  Mat inter = Mat::Identity(s.n, s.n);  // basis of running intersection
  for (const Mat& a : s.ops) {
    SymEigen es = sym_eigen(a);
    int kd = 0;
    for (int i = 0; i < es.values.size(); ++i)
      if (std::abs(es.values[i]) < tol) ++kd;
    rep.kernel_dims.push_back(kd);
    inter = restricted_kernel(a, inter, tol);
  }
  rep.intersection_dim = static_cast<int>(inter.cols());
  int k0 = rep.kernel_dims.front();
  bool all_equal = std::all_of(rep.kernel_dims.begin(), rep.kernel_dims.end(),
                               [&](int k) { return k == k0; });
  rep.holds = all_equal && rep.intersection_dim == k0;
  return rep;
}

}  // namespace isopar
