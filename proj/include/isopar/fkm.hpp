// Geometry of the quartic F(x) = |x|^4 - 2 sum_i <P_i x, x>^2 attached to a
// symmetric Clifford system: focal-set sampling, the Clifford normal basis
// and direct shape operators on M+, the <X, P_i P_j x> Ricci formula, span
// diagnostics, common eigenvectors of commuting products P_a P_b P_c P_d, and
// the eigenspace structure of shape operators on M-.
#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "isopar/clifford.hpp"
#include "isopar/curvature.hpp"
#include "isopar/linalg.hpp"
#include "isopar/quartic.hpp"
#include "isopar/rng.hpp"

namespace isopar {

// Polarization of |x|^4 - 2 sum <P_i x, x>^2: for the pair matrix
// [T(u,v,.,.)] the three pairings of each square term are written out, so the
// result is the exact symmetric 4-linear form.
inline QuarticForm fkm_polynomial(const CliffordSystem& sys) {
  auto mats = std::make_shared<std::vector<Mat>>(sys.P);
  const int n = sys.dim();
  auto pair = [mats, n](const Vec& u, const Vec& v) {
    Mat m = (u.dot(v) * Mat::Identity(n, n) + u * v.transpose() + v * u.transpose()) / 3.0;
    for (const Mat& p : *mats) {
      Vec pu = p * u, pv = p * v;
      m -= (2.0 / 3.0) * (pu.dot(v) * p + pu * pv.transpose() + pv * pu.transpose());
    }
    return m;
  };
  return QuarticForm(n, pair, sys.multiplicities(),
                     "fkm(m=" + std::to_string(sys.m) + ",l=" + std::to_string(sys.l) + ")");
}

struct FkmContext {
  CliffordSystem system;
  QuarticForm form;
  int m1 = 0, m2 = 0;

  int dim() const { return system.dim(); }
};

inline FkmContext make_fkm_context(CliffordSystem sys) {
  QuarticForm f = fkm_polynomial(sys);
  auto [m1, m2] = sys.multiplicities();
  return FkmContext{std::move(sys), std::move(f), m1, m2};
}

// ---- sampling ---------------------------------------------------------------

struct MinusSample {
  Vec y;       // unit vector with P y = y, so F(y) = -1
  Mat P;       // the Clifford sphere element fixing y
  Vec coeffs;  // P = sum coeffs_i P_i
};

inline MinusSample sample_m_minus(const FkmContext& ctx, Rng& rng) {
  MinusSample out;
  out.coeffs = rng.unit_vector(ctx.system.m + 1);
  out.P = clifford_sphere_element(ctx.system, out.coeffs);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec v = rng.gaussian_vector(ctx.dim());
    Vec y = 0.5 * (v + out.P * v);
    double s = y.norm();
    if (s > 1e-6) {
      out.y = y / s;
      return out;
    }
  }
  throw std::runtime_error("sample_m_minus: projection onto E_+(P) collapsed");
}

// Newton least-squares projection onto {<P_i x, x> = 0 for all i, |x| = 1}.
inline Vec sample_m_plus(const FkmContext& ctx, Rng& rng, double tol = 1e-12,
                         int max_iter = 50, int restarts = 5) {
  const int n = ctx.dim();
  const int m = ctx.system.m;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    Vec x = rng.unit_vector(n);
    for (int iter = 0; iter < max_iter; ++iter) {
      Vec c(m + 2);
      Mat jac(m + 2, n);
      for (int i = 0; i <= m; ++i) {
        Vec px = ctx.system.P[static_cast<size_t>(i)] * x;
        c[i] = px.dot(x);
        jac.row(i) = 2.0 * px.transpose();
      }
      c[m + 1] = x.squaredNorm() - 1.0;
      jac.row(m + 1) = 2.0 * x.transpose();
      if (max_abs(c) <= tol) return x;
      Mat jjt = jac * jac.transpose();
      Vec lam = jjt.ldlt().solve(-c);
      x += jac.transpose() * lam;
    }
    Vec c(m + 2);
    for (int i = 0; i <= m; ++i) c[i] = (ctx.system.P[static_cast<size_t>(i)] * x).dot(x);
    c[m + 1] = x.squaredNorm() - 1.0;
    if (max_abs(c) <= tol) return x;
  }
  throw std::runtime_error("sample_m_plus: Newton projection failed to converge");
}

// Columns P_i x: an orthonormal basis of the normal space of M+ inside the
// sphere at x.
inline Mat normal_basis_m_plus(const FkmContext& ctx, const Vec& x) {
  const int n = ctx.dim();
  Mat basis(n, ctx.system.m + 1);
  for (int i = 0; i <= ctx.system.m; ++i) {
    basis.col(i) = ctx.system.P[static_cast<size_t>(i)] * x;
    if (std::abs(basis.col(i).dot(x)) > 1e-8)
      throw std::invalid_argument("normal_basis_m_plus: x is not on M+");
  }
  if (gram_residual(basis) > 1e-8)
    throw std::invalid_argument("normal_basis_m_plus: normal basis is not orthonormal");
  return basis;
}

// Shape operator of M+ for the normal P_i x is the tangential part of
// X -> -P_i X; in a tangent basis, (S_i)_{jk} = -<P_i t_j, t_k>.
inline ShapeOperatorSet shape_operators_direct(const FkmContext& ctx, const Vec& x,
                                               const Mat& tangent) {
  ShapeOperatorSet s;
  s.n = static_cast<int>(tangent.cols());
  for (int i = 0; i <= ctx.system.m; ++i) {
    Mat si = -(tangent.transpose() * ctx.system.P[static_cast<size_t>(i)] * tangent);
    s.ops.push_back(Mat(0.5 * (si + si.transpose())));
    s.labels.push_back("P" + std::to_string(i) + "x");
  }
  (void)x;
  return s;
}

// Ric(X, X) = 2 (l - m - 2) + 2 sum_{i<j} <X, P_i P_j x>^2 for unit tangent X
// at x on M+.
inline double ricci_via_pipj(const FkmContext& ctx, const Vec& x, const Vec& X) {
  if (std::abs(X.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("ricci_via_pipj: X must be a unit vector");
  if (std::abs(X.dot(x)) > 1e-8)
    throw std::invalid_argument("ricci_via_pipj: X must be tangent (X . x != 0)");
  for (int i = 0; i <= ctx.system.m; ++i)
    if (std::abs(X.dot(ctx.system.P[static_cast<size_t>(i)] * x)) > 1e-8)
      throw std::invalid_argument("ricci_via_pipj: X must be tangent (X . P_i x != 0)");
  double acc = 0;
  for (int i = 0; i <= ctx.system.m; ++i) {
    Vec pix = ctx.system.P[static_cast<size_t>(i)] * x;
    for (int j = i + 1; j <= ctx.system.m; ++j) {
      double t = X.dot(ctx.system.P[static_cast<size_t>(j)] * pix);
      acc += t * t;
    }
  }
  return 2.0 * (ctx.system.l - ctx.system.m - 2) + 2.0 * acc;
}

// Collect the C(m+1, 2) vectors P_i P_j x (i < j) as columns.
inline Mat pipj_columns(const FkmContext& ctx, const Vec& x) {
  const int m = ctx.system.m;
  Mat cols(ctx.dim(), (m + 1) * m / 2);
  int c = 0;
  for (int i = 0; i <= m; ++i) {
    Vec pjx = ctx.system.P[static_cast<size_t>(i)] * x;
    for (int j = i + 1; j <= m; ++j) cols.col(c++) = ctx.system.P[static_cast<size_t>(j)] * pjx;
  }
  return cols;
}

inline int span_dimension(const FkmContext& ctx, const Vec& x) {
  return numerical_rank(pipj_columns(ctx, x), 1e-8);
}

// ---- common eigenvectors of commuting P_a P_b P_c P_d products --------------

using ProductOp = std::array<int, 4>;

// {P_{2i} P_{2i+1} P_{2j} P_{2j+1} : 0 <= i < j < blocks}.
inline std::vector<ProductOp> pair_block_operators(int blocks) {
  std::vector<ProductOp> ops;
  for (int i = 0; i < blocks; ++i)
    for (int j = i + 1; j < blocks; ++j)
      ops.push_back({2 * i, 2 * i + 1, 2 * j, 2 * j + 1});
  return ops;
}

// Generators of the 16-element commuting family built on the Steiner system
// S(3,4,8): every pair {i,j} in {0..7} lies in a codeword, so a joint
// eigenvector collapses the span of all P_i P_j x to seven directions.
inline std::vector<ProductOp> steiner_operators() {
  return {{0, 1, 2, 3}, {0, 1, 4, 5}, {0, 2, 4, 6}, {1, 3, 5, 7}};
}

// Commuting products used for the eleven-matrix system on R^64.
inline std::vector<ProductOp> ten21_operators() {
  return {{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 8, 9}, {2, 3, 8, 9}, {0, 2, 8, 10}};
}

inline Mat product_operator(const std::vector<Mat>& P, const ProductOp& op) {
  Mat q = P.at(static_cast<size_t>(op[0]));
  for (int t = 1; t < 4; ++t) q = q * P.at(static_cast<size_t>(op[t]));
  return q;
}

struct CommonEigenvectorResult {
  Vec x;
  std::vector<int> signs;  // realized eigenvalue signs, one per operator
  int patterns_tried = 1;
};

// Joint unit eigenvector of the given commuting symmetric involutions,
// obtained by successive projection. Sign choices default to all +1; if a
// choice annihilates the start vector, patterns are retried in Gray-code
// order. Supplying explicit signs disables the retry.
inline CommonEigenvectorResult common_eigenvector(const std::vector<Mat>& P,
                                                  const std::vector<ProductOp>& ops,
                                                  Rng& rng,
                                                  std::vector<int> signs = {}) {
  if (ops.empty()) throw std::invalid_argument("common_eigenvector: no operators");
  std::vector<Mat> q;
  q.reserve(ops.size());
  for (const auto& op : ops) q.push_back(product_operator(P, op));

  const bool fixed = !signs.empty();
  if (fixed && signs.size() != ops.size())
    throw std::invalid_argument("common_eigenvector: one sign per operator required");

  const int r = static_cast<int>(ops.size());
  const std::uint64_t patterns = fixed ? 1ull : (1ull << std::min(r, 20));
  for (std::uint64_t trial = 0; trial < patterns; ++trial) {
    std::uint64_t gray = trial ^ (trial >> 1);
    std::vector<int> s(static_cast<size_t>(r), 1);
    if (fixed) {
      s = signs;
    } else {
      for (int b = 0; b < r; ++b)
        if (gray & (1ull << b)) s[static_cast<size_t>(b)] = -1;
    }
    Vec v = rng.gaussian_vector(static_cast<int>(P.front().rows()));
    bool collapsed = false;
    for (int i = 0; i < r; ++i) {
      v = 0.5 * (v + s[static_cast<size_t>(i)] * (q[static_cast<size_t>(i)] * v));
      if (v.norm() < 1e-10) {
        collapsed = true;
        break;
      }
    }
    if (collapsed) continue;
    v.normalize();
    double worst = 0;
    for (int i = 0; i < r; ++i)
      worst = std::max(worst, (q[static_cast<size_t>(i)] * v - s[static_cast<size_t>(i)] * v).norm());
    if (worst > 1e-9) continue;
    CommonEigenvectorResult out;
    out.x = v;
    out.signs = s;
    out.patterns_tried = static_cast<int>(trial) + 1;
    return out;
  }
  throw std::runtime_error("common_eigenvector: no sign pattern admits a joint eigenvector");
}

inline double m_plus_membership_residual(const FkmContext& ctx, const Vec& x) {
  double worst = std::abs(x.squaredNorm() - 1.0);
  for (const Mat& p : ctx.system.P)
    worst = std::max(worst, std::abs((p * x).dot(x)));
  return worst;
}

// ---- eigenspace structure on M- ---------------------------------------------

struct MinusEigenspaces {
  Mat kernel;  // dim l - m - 1
  Mat eplus;   // dim m, eigenvalue +1 of S_N
  Mat eminus;  // dim m, eigenvalue -1 of S_N
};

// For y on M- with P y = y and a unit normal N (which lies in E_-(P)):
// E_{+-1}(S_N) = span{Q (y +- N)} over Q in the orthogonal complement of P in
// the span of the system, and Ker S_N = {v in E_+(P) : v perp y, v perp Q N}.
inline MinusEigenspaces m_minus_eigenspaces(const FkmContext& ctx, const Vec& y,
                                            const Mat& P, const Vec& N) {
  const int n = ctx.dim();
  const int m = ctx.system.m;
  const int l = ctx.system.l;
  if ((P * y - y).norm() > 1e-8)
    throw std::invalid_argument("m_minus_eigenspaces: P y != y");
  if (std::abs(N.norm() - 1.0) > 1e-8 || std::abs(N.dot(y)) > 1e-8)
    throw std::invalid_argument("m_minus_eigenspaces: N must be a unit vector orthogonal to y");
  if ((P * N + N).norm() > 1e-6)
    throw std::invalid_argument("m_minus_eigenspaces: N is not normal to M- at y");

  // Coefficients of P in the system basis, then an orthonormal basis of the
  // complementary great sphere directions.
  Vec c(m + 1);
  for (int i = 0; i <= m; ++i)
    c[i] = (ctx.system.P[static_cast<size_t>(i)] * P).trace() / (2.0 * l);
  Mat comp = orthonormal_complement(Mat(c / c.norm()));
  std::vector<Mat> q;
  for (int a = 0; a < m; ++a) {
    Mat qa = Mat::Zero(n, n);
    for (int i = 0; i <= m; ++i) qa += comp(i, a) * ctx.system.P[static_cast<size_t>(i)];
    q.push_back(std::move(qa));
  }

  MinusEigenspaces out;
  out.eplus.resize(n, m);
  out.eminus.resize(n, m);
  for (int a = 0; a < m; ++a) {
    out.eplus.col(a) = q[static_cast<size_t>(a)] * (y + N) / std::sqrt(2.0);
    out.eminus.col(a) = q[static_cast<size_t>(a)] * (y - N) / std::sqrt(2.0);
  }
  if (gram_residual(out.eplus) > 1e-8 || gram_residual(out.eminus) > 1e-8)
    throw std::runtime_error("m_minus_eigenspaces: eigenvalue bases failed orthonormality");

  // E_+(P) via the projector (I + P)/2, then remove y and the Q N directions.
  Mat proj = 0.5 * (Mat::Identity(n, n) + P);
  Mat eplusP = orthonormal_span(proj, 1e-8);
  if (eplusP.cols() != l)
    throw std::runtime_error("m_minus_eigenspaces: E_+(P) has unexpected dimension");
  Mat removed(n, m + 1);
  removed.col(0) = y;
  for (int a = 0; a < m; ++a) removed.col(a + 1) = q[static_cast<size_t>(a)] * N;
  Mat basis = eplusP;
  for (int j = 0; j < basis.cols(); ++j) {
    Vec v = basis.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (int r = 0; r < removed.cols(); ++r)
        v -= removed.col(r).dot(v) * removed.col(r);
    basis.col(j) = v;
  }
  out.kernel = orthonormal_span(basis, 1e-6);
  if (out.kernel.cols() != l - m - 1)
    throw std::runtime_error("m_minus_eigenspaces: kernel has unexpected dimension");
  return out;
}

}  // namespace isopar
