// Degree-4 Cartan-Munzner machinery. A QuarticForm is represented by its
// exact symmetric polarization: the caller supplies pair(u, v), the ambient
// symmetric matrix [T(u, v, e_j, e_k)]_{jk} of the 4-linear form T with
// F(x) = T(x,x,x,x). Everything else (values, gradients, Laplacians, focal
// frames, fundamental forms, the degree-4 expansion at a focal point) is
// derived from that one callable.
#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isopar/curvature.hpp"
#include "isopar/linalg.hpp"
#include "isopar/rng.hpp"

namespace isopar {

class QuarticForm {
 public:
  using PairFn = std::function<Mat(const Vec&, const Vec&)>;

  QuarticForm(int dim, PairFn pair, std::pair<int, int> multiplicities,
              std::string label)
      : dim_(dim),
        pair_(std::move(pair)),
        mult_(multiplicities),
        label_(std::move(label)) {
    if (dim_ < 2) throw std::invalid_argument("QuarticForm: ambient dimension too small");
  }

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  std::pair<int, int> multiplicities() const { return mult_; }

  // T(u, v, ., .) as an ambient symmetric matrix.
  Mat pair_matrix(const Vec& u, const Vec& v) const {
    check(u);
    check(v);
    return pair_(u, v);
  }

  double t4(const Vec& u, const Vec& v, const Vec& w, const Vec& z) const {
    check(w);
    check(z);
    return w.dot(pair_matrix(u, v) * z);
  }

  double value(const Vec& x) const {
    check(x);
    Mat p = pair_(x, x);
    return x.dot(p * x);
  }

  // grad F = 4 T(x, x, x, .).
  Vec gradient(const Vec& x) const {
    check(x);
    return 4.0 * (pair_(x, x) * x);
  }

  // Lap F = 12 sum_j T(x, x, e_j, e_j).
  double laplacian(const Vec& x) const {
    check(x);
    return 12.0 * pair_(x, x).trace();
  }

  // Same zero set geometry with the two focal varieties exchanged.
  QuarticForm negated() const {
    PairFn p = pair_;
    return QuarticForm(
        dim_, [p](const Vec& u, const Vec& v) { return Mat(-p(u, v)); },
        {mult_.second, mult_.first}, label_ + "(-)");
  }

 private:
  void check(const Vec& v) const {
    if (v.size() != dim_) throw std::invalid_argument("QuarticForm: dimension mismatch");
  }

  int dim_;
  PairFn pair_;
  std::pair<int, int> mult_;
  std::string label_;
};

struct CmReport {
  double max_gradient_residual = 0;  // | |grad F|^2 - 16 |x|^6 |
  double max_laplacian_residual = 0; // | Lap F - 8 (m2 - m1) |x|^2 |
  int samples = 0;
  bool pass = false;
};

// Checks the two defining identities of a degree-4 isoparametric polynomial
// at random points of varying radius.
inline CmReport verify_cartan_munzner(const QuarticForm& f, int samples,
                                      double tol, Rng& rng) {
  CmReport rep;
  rep.samples = samples;
  const auto [m1, m2] = f.multiplicities();
  for (int s = 0; s < samples; ++s) {
    Vec x = rng.unit_vector(f.dim());
    double radius = 0.25 + 1.5 * rng.uniform();
    x *= radius;
    double r2 = x.squaredNorm();
    double g = f.gradient(x).squaredNorm() - 16.0 * r2 * r2 * r2;
    double lap = f.laplacian(x) - 8.0 * (m2 - m1) * r2;
    rep.max_gradient_residual = std::max(rep.max_gradient_residual, std::abs(g));
    rep.max_laplacian_residual = std::max(rep.max_laplacian_residual, std::abs(lap));
  }
  rep.pass = rep.max_gradient_residual <= tol && rep.max_laplacian_residual <= tol;
  return rep;
}

struct SphereReport {
  double max_gradient_residual = 0;  // | |grad_S f|^2 - 16 (1 - f^2) |
  double max_laplacian_residual = 0; // | Lap_S f - (8 (m2 - m1) - 4 (N + 2) f) |
  int samples = 0;
  bool pass = false;
};

// Restriction to the unit sphere: tangential gradient by projection, sphere
// Laplacian through the degree-4 cone formula Lap_S f = Lap F - 4 (N + 2) f.
inline SphereReport sphere_restriction_check(const QuarticForm& f, int samples,
                                             double tol, Rng& rng) {
  SphereReport rep;
  rep.samples = samples;
  const auto [m1, m2] = f.multiplicities();
  const int n = f.dim();
  for (int s = 0; s < samples; ++s) {
    Vec x = rng.unit_vector(n);
    double fx = f.value(x);
    Vec grad = f.gradient(x);
    Vec gs = grad - grad.dot(x) * x;
    double gres = gs.squaredNorm() - 16.0 * (1.0 - fx * fx);
    double lap_s = f.laplacian(x) - 4.0 * (n + 2) * fx;
    double lres = lap_s - (8.0 * (m2 - m1) - 4.0 * (n + 2) * fx);
    rep.max_gradient_residual = std::max(rep.max_gradient_residual, std::abs(gres));
    rep.max_laplacian_residual = std::max(rep.max_laplacian_residual, std::abs(lres));
  }
  rep.pass = rep.max_gradient_residual <= tol && rep.max_laplacian_residual <= tol;
  return rep;
}

// Orthonormal tangent/normal bases at a point of the focal variety F = +1.
// For the other focal variety pass the negated form and sign = -1.
struct FocalFrame {
  Vec x;
  int sign = +1;
  Mat tangent;  // columns orthonormal
  Mat normal;   // columns orthonormal

  int dim_t() const { return static_cast<int>(tangent.cols()); }
  int dim_n() const { return static_cast<int>(normal.cols()); }
};

// The quadratic u -> 6 T(x,x,u,u) on the hyperplane x-perp takes the value 2
// on tangent and -6 on normal directions; the frame is read off from its
// eigen-decomposition, clustering eigenvalues within cluster_tol of {2, -6}.
inline FocalFrame focal_frame(const QuarticForm& f, const Vec& x,
                              double tol = 1e-8, int sign = +1,
                              double cluster_tol = 0.5) {
  if (std::abs(f.value(x) - 1.0) > tol)
    throw std::invalid_argument("focal_frame: point is not on the focal variety F = 1");
  const int n = f.dim();
  Vec xhat = x / x.norm();
  Mat comp = orthonormal_complement(Mat(xhat));
  Mat a = 6.0 * (comp.transpose() * f.pair_matrix(x, x) * comp);
  SymEigen es = sym_eigen(Mat(0.5 * (a + a.transpose())));
  std::vector<int> tang, norm;
  for (int i = 0; i < es.values.size(); ++i) {
    double v = es.values[i];
    if (std::abs(v - 2.0) <= cluster_tol) tang.push_back(i);
    else if (std::abs(v + 6.0) <= cluster_tol) norm.push_back(i);
    else throw std::runtime_error("focal_frame: eigenvalue outside the {2, -6} clusters");
  }
  FocalFrame fr;
  fr.x = x;
  fr.sign = sign;
  fr.tangent.resize(n, static_cast<int>(tang.size()));
  fr.normal.resize(n, static_cast<int>(norm.size()));
  for (size_t c = 0; c < tang.size(); ++c) fr.tangent.col(static_cast<int>(c)) = comp * es.vectors.col(tang[c]);
  for (size_t c = 0; c < norm.size(); ++c) fr.normal.col(static_cast<int>(c)) = comp * es.vectors.col(norm[c]);
  return fr;
}

// Frame from caller-supplied bases (e.g. explicit coordinate frames or the
// Clifford normal basis); validates orthonormality and the 2 / -6 values.
inline FocalFrame make_frame(const QuarticForm& f, const Vec& x, const Mat& tangent,
                             const Mat& normal, double tol = 1e-8, int sign = +1) {
  if (std::abs(f.value(x) - 1.0) > tol)
    throw std::invalid_argument("make_frame: point is not on the focal variety F = 1");
  const int n = f.dim();
  if (tangent.rows() != n || normal.rows() != n)
    throw std::invalid_argument("make_frame: basis dimension mismatch");
  if (tangent.cols() + normal.cols() + 1 != n)
    throw std::invalid_argument("make_frame: bases do not fill the ambient space");
  Mat all(n, n);
  all.col(0) = x;
  all.middleCols(1, tangent.cols()) = tangent;
  all.rightCols(normal.cols()) = normal;
  if (gram_residual(all) > 1e-8)
    throw std::invalid_argument("make_frame: bases are not orthonormal");
  Mat p = f.pair_matrix(x, x);
  for (int j = 0; j < tangent.cols(); ++j) {
    double v = 6.0 * tangent.col(j).dot(p * tangent.col(j));
    if (std::abs(v - 2.0) > 1e-6)
      throw std::invalid_argument("make_frame: tangent direction fails the value-2 test");
  }
  for (int j = 0; j < normal.cols(); ++j) {
    double v = 6.0 * normal.col(j).dot(p * normal.col(j));
    if (std::abs(v + 6.0) > 1e-6)
      throw std::invalid_argument("make_frame: normal direction fails the value--6 test");
  }
  FocalFrame fr;
  fr.x = x;
  fr.sign = sign;
  fr.tangent = tangent;
  fr.normal = normal;
  return fr;
}

// Shape operators from the polarization: (S_i)_{jk} = (3/2) T(x, n_i, e_j, e_k)
// in the frame's tangent basis.
inline ShapeOperatorSet second_fundamental_form(const QuarticForm& f,
                                                const FocalFrame& frame) {
  ShapeOperatorSet s;
  s.n = frame.dim_t();
  for (int i = 0; i < frame.dim_n(); ++i) {
    Mat p = f.pair_matrix(frame.x, frame.normal.col(i));
    Mat si = 1.5 * (frame.tangent.transpose() * p * frame.tangent);
    s.ops.push_back(Mat(0.5 * (si + si.transpose())));
    s.labels.push_back("n" + std::to_string(i));
  }
  return s;
}

// Symmetric cubic q(y) = (1/2) T(n, y, y, y) in tangent coordinates, stored
// as one symmetric matrix slice per first index.
struct SymmetricCubic {
  std::vector<Mat> slice;  // slice[j](k, l) = T(n, f_j, f_k, f_l)

  double value(const Vec& y) const {
    double acc = 0;
    for (size_t j = 0; j < slice.size(); ++j)
      acc += y[static_cast<int>(j)] * y.dot(slice[j] * y);
    return 0.5 * acc;
  }
};

inline std::vector<SymmetricCubic> third_fundamental_form(const QuarticForm& f,
                                                          const FocalFrame& frame) {
  std::vector<SymmetricCubic> out;
  const int dt = frame.dim_t();
  out.reserve(static_cast<size_t>(frame.dim_n()));
  for (int i = 0; i < frame.dim_n(); ++i) {
    SymmetricCubic q;
    q.slice.reserve(static_cast<size_t>(dt));
    for (int j = 0; j < dt; ++j) {
      Mat p = f.pair_matrix(frame.normal.col(i), frame.tangent.col(j));
      Mat s = frame.tangent.transpose() * p * frame.tangent;
      q.slice.push_back(Mat(0.5 * (s + s.transpose())));
    }
    out.push_back(std::move(q));
  }
  return out;
}

struct ExpansionReport {
  double max_relative_residual = 0;
  int samples = 0;
  bool pass = false;
};

// Degree-4 expansion at a focal point: for x on F = +1 with tangent y and
// normal w,
//   F(t x + y + w) = t^4 + (2|y|^2 - 6|w|^2) t^2 + 8 (sum_i p_i(y) w_i) t
//                    + |y|^4 - 2 sum_i p_i(y)^2 + 8 sum_i q_i(y) w_i
//                    + 2 sum_{ij} <grad p_i, grad p_j>(y) w_i w_j
//                    - 6 |y|^2 |w|^2 + |w|^4,
// where p_i(y) = <S_i y, y>, q_i is the cubic piece, and
// <grad p_i, grad p_j>(y) = 4 <S_i y, S_j y>. The right side is rebuilt from
// the extracted pieces and compared with a direct evaluation of F.
inline ExpansionReport reconstruct_expansion_check(const QuarticForm& f,
                                                   const FocalFrame& frame,
                                                   int samples, double tol,
                                                   Rng& rng) {
  const int dt = frame.dim_t();
  const int dn = frame.dim_n();
  ShapeOperatorSet s = second_fundamental_form(f, frame);
  std::vector<SymmetricCubic> q = third_fundamental_form(f, frame);

  ExpansionReport rep;
  rep.samples = samples;
  for (int it = 0; it < samples; ++it) {
    double t = rng.gaussian();
    Vec y = rng.gaussian_vector(dt);
    Vec w = rng.gaussian_vector(dn);

    Vec point = t * frame.x + frame.tangent * y + frame.normal * w;
    double lhs = f.value(point);

    double y2 = y.squaredNorm(), w2 = w.squaredNorm();
    std::vector<double> p(static_cast<size_t>(dn));
    std::vector<Vec> sy(static_cast<size_t>(dn));
    for (int i = 0; i < dn; ++i) {
      sy[static_cast<size_t>(i)] = s.ops[static_cast<size_t>(i)] * y;
      p[static_cast<size_t>(i)] = y.dot(sy[static_cast<size_t>(i)]);
    }
    double pw = 0, p2 = 0, qw = 0, gw = 0;
    for (int i = 0; i < dn; ++i) {
      pw += p[static_cast<size_t>(i)] * w[i];
      p2 += p[static_cast<size_t>(i)] * p[static_cast<size_t>(i)];
      qw += q[static_cast<size_t>(i)].value(y) * w[i];
      for (int j = 0; j < dn; ++j)
        gw += 4.0 * sy[static_cast<size_t>(i)].dot(sy[static_cast<size_t>(j)]) * w[i] * w[j];
    }
    double rhs = t * t * t * t + (2.0 * y2 - 6.0 * w2) * t * t + 8.0 * pw * t +
                 y2 * y2 - 2.0 * p2 + 8.0 * qw + 2.0 * gw - 6.0 * y2 * w2 + w2 * w2;
    double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
    rep.max_relative_residual = std::max(rep.max_relative_residual, rel);
  }
  rep.pass = rep.max_relative_residual <= tol;
  return rep;
}

}  // namespace isopar
