// Orbit quartics on so(5, R) = R^10 and so(5, C) = R^20:
//   real:    F(Z) = (3/4) (Tr Z^2)^2   - 2 Tr(Z^4),        multiplicities (2, 2)
//   complex: F(Z) = (3/4) (Tr Z Zbar)^2 - 2 Tr((Z Zbar)^2), multiplicities (4, 5)
// with skew 5x5 matrix coordinates. Provides the flat <-> matrix coordinate
// maps, reference points on both focal varieties, explicit coordinate frames
// at those points, group-orbit sampling, and verification of the extracted
// shape operator quadratics against the closed-form reference quadratics.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "isopar/linalg.hpp"
#include "isopar/quartic.hpp"
#include "isopar/rng.hpp"

namespace isopar {

enum class So5Kind { real5, complex5 };
enum class FocalSide { plus, minus };

inline int so5_dim(So5Kind kind) { return kind == So5Kind::real5 ? 10 : 20; }

// Index pairs (i < j), lexicographic; flat layout is a_{ij} for the real case
// and x_{ij} (0..9) followed by y_{ij} (10..19) for the complex case.
inline const std::array<std::pair<int, int>, 10>& so5_pairs() {
  static const std::array<std::pair<int, int>, 10> p = {
      std::make_pair(1, 2), {1, 3}, {1, 4}, {1, 5}, {2, 3},
      {2, 4},               {2, 5}, {3, 4}, {3, 5}, {4, 5}};
  return p;
}

inline int pair_index(int i, int j) {
  const auto& ps = so5_pairs();
  for (int t = 0; t < 10; ++t)
    if (ps[static_cast<size_t>(t)] == std::make_pair(i, j)) return t;
  throw std::invalid_argument("pair_index: bad index pair");
}

inline Eigen::Matrix<double, 5, 5> flat_to_skew_real(const Vec& v) {
  if (v.size() != 10) throw std::invalid_argument("flat_to_skew_real: need 10 coordinates");
  Eigen::Matrix<double, 5, 5> z = Eigen::Matrix<double, 5, 5>::Zero();
  for (int t = 0; t < 10; ++t) {
    auto [i, j] = so5_pairs()[static_cast<size_t>(t)];
    z(i - 1, j - 1) = v[t];
    z(j - 1, i - 1) = -v[t];
  }
  return z;
}

inline Vec skew_to_flat_real(const Eigen::Matrix<double, 5, 5>& z) {
  Vec v(10);
  for (int t = 0; t < 10; ++t) {
    auto [i, j] = so5_pairs()[static_cast<size_t>(t)];
    v[t] = z(i - 1, j - 1);
  }
  return v;
}

using C55 = Eigen::Matrix<std::complex<double>, 5, 5>;

inline C55 flat_to_skew_complex(const Vec& v) {
  if (v.size() != 20) throw std::invalid_argument("flat_to_skew_complex: need 20 coordinates");
  C55 z = C55::Zero();
  for (int t = 0; t < 10; ++t) {
    auto [i, j] = so5_pairs()[static_cast<size_t>(t)];
    std::complex<double> a(v[t], v[t + 10]);
    z(i - 1, j - 1) = a;
    z(j - 1, i - 1) = -a;
  }
  return z;
}

inline Vec skew_to_flat_complex(const C55& z) {
  Vec v(20);
  for (int t = 0; t < 10; ++t) {
    auto [i, j] = so5_pairs()[static_cast<size_t>(t)];
    v[t] = z(i - 1, j - 1).real();
    v[t + 10] = z(i - 1, j - 1).imag();
  }
  return v;
}

namespace detail {

// Flat-basis skew matrices; the complex case appends the purely imaginary
// copies. Both quartics polarize through the same trace formulas once the
// basis is complexified.
inline std::vector<C55> so5_basis(So5Kind kind) {
  std::vector<C55> basis;
  for (int t = 0; t < 10; ++t) {
    auto [i, j] = so5_pairs()[static_cast<size_t>(t)];
    C55 a = C55::Zero();
    a(i - 1, j - 1) = 1.0;
    a(j - 1, i - 1) = -1.0;
    basis.push_back(a);
  }
  if (kind == So5Kind::complex5) {
    for (int t = 0; t < 10; ++t) {
      C55 a = std::complex<double>(0.0, 1.0) * basis[static_cast<size_t>(t)];
      basis.push_back(a);
    }
  }
  return basis;
}

// Dense symmetric polarization tensor T with F(z) = T(z,z,z,z):
// T(a,b,c,d) = (1/4)[b_ab b_cd + b_ac b_bd + b_ad b_bc]
//              - (2/24) sum_{sigma in S4} Re Tr(A_s1 conj(A_s2) A_s3 conj(A_s4)),
// where b(U, V) = Re Tr(U conj(V)). Exact symmetrization, built once.
inline std::shared_ptr<const std::vector<double>> build_so5_tensor(So5Kind kind) {
  const std::vector<C55> basis = so5_basis(kind);
  const int n = static_cast<int>(basis.size());
  Mat b(n, n);
  std::vector<C55> prod(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      C55 p = basis[static_cast<size_t>(i)] * basis[static_cast<size_t>(j)].conjugate();
      b(i, j) = p.trace().real();
      prod[static_cast<size_t>(i) * n + j] = p;
    }

  static const int perms[24][4] = {
      {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1},
      {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0}, {1, 3, 0, 2}, {1, 3, 2, 0},
      {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0},
      {3, 0, 1, 2}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};

  auto tensor = std::make_shared<std::vector<double>>(
      static_cast<size_t>(n) * n * n * n, 0.0);
  auto& t = *tensor;
  auto trace_of = [&](int i, int j, int k, int l) {
    const C55& p1 = prod[static_cast<size_t>(i) * n + j];
    const C55& p2 = prod[static_cast<size_t>(k) * n + l];
    std::complex<double> acc = 0;
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) acc += p1(r, c) * p2(c, r);
    return acc.real();
  };
  int idx[4];
  for (idx[0] = 0; idx[0] < n; ++idx[0])
    for (idx[1] = idx[0]; idx[1] < n; ++idx[1])
      for (idx[2] = idx[1]; idx[2] < n; ++idx[2])
        for (idx[3] = idx[2]; idx[3] < n; ++idx[3]) {
          double pairs = 0.25 * (b(idx[0], idx[1]) * b(idx[2], idx[3]) +
                                 b(idx[0], idx[2]) * b(idx[1], idx[3]) +
                                 b(idx[0], idx[3]) * b(idx[1], idx[2]));
          double quart = 0;
          for (const auto& s : perms)
            quart += trace_of(idx[s[0]], idx[s[1]], idx[s[2]], idx[s[3]]);
          double val = pairs - 2.0 * quart / 24.0;
          // write to every argument order
          for (const auto& s : perms) {
            size_t flat = ((static_cast<size_t>(idx[s[0]]) * n + idx[s[1]]) * n + idx[s[2]]) * n + idx[s[3]];
            t[flat] = val;
          }
        }
  return tensor;
}

inline QuarticForm so5_form(So5Kind kind) {
  static const auto tensor_real = build_so5_tensor(So5Kind::real5);
  static const auto tensor_cx = build_so5_tensor(So5Kind::complex5);
  auto tensor = kind == So5Kind::real5 ? tensor_real : tensor_cx;
  const int n = so5_dim(kind);
  auto pair = [tensor, n](const Vec& u, const Vec& v) {
    const auto& t = *tensor;
    Mat m = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a) {
      if (u[a] == 0.0) continue;
      for (int bb = 0; bb < n; ++bb) {
        double w = u[a] * v[bb];
        if (w == 0.0) continue;
        const double* slice = t.data() + ((static_cast<size_t>(a) * n + bb) * n) * n;
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) m(j, k) += w * slice[static_cast<size_t>(j) * n + k];
      }
    }
    return m;
  };
  if (kind == So5Kind::real5)
    return QuarticForm(10, pair, {2, 2}, "so5-real");
  return QuarticForm(20, pair, {4, 5}, "so5-complex");
}

}  // namespace detail

inline QuarticForm so5_real_polynomial() { return detail::so5_form(So5Kind::real5); }
inline QuarticForm so5_complex_polynomial() { return detail::so5_form(So5Kind::complex5); }

// Reference points: the real family has F = -1 at a12 = 1 and F = +1 at
// a12 = a34 = 1/sqrt(2); the complex family has F = +1 at x12 = x34 = 1/sqrt(2)
// and F = -1 at x12 = 1.
inline Vec reference_point(So5Kind kind, FocalSide side) {
  Vec v = Vec::Zero(so5_dim(kind));
  const double s = 1.0 / std::sqrt(2.0);
  if (kind == So5Kind::real5) {
    if (side == FocalSide::minus) v[0] = 1.0;
    else { v[0] = s; v[7] = s; }
  } else {
    if (side == FocalSide::plus) { v[0] = s; v[7] = s; }
    else v[0] = 1.0;
  }
  return v;
}

// Isometry-orbit sample through the base point: conjugation by a Haar
// special orthogonal matrix (real) or Z -> u Z u^T with Haar unitary u
// (complex); both preserve the quartic and the flat norm.
inline Vec adjoint_orbit_sample(So5Kind kind, const Vec& base, Rng& rng) {
  if (kind == So5Kind::real5) {
    Eigen::Matrix<double, 5, 5> z = flat_to_skew_real(base);
    Eigen::MatrixXd g = rng.special_orthogonal(5);
    Eigen::Matrix<double, 5, 5> zz = g * z * g.transpose();
    return skew_to_flat_real(zz);
  }
  C55 z = flat_to_skew_complex(base);
  Eigen::MatrixXcd u = rng.unitary(5);
  C55 zz = u * z * u.transpose();
  return skew_to_flat_complex(zz);
}

namespace detail {

inline Vec unit_dir(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1.0;
  return v;
}

inline Vec mix_dir(int n, int i, double ci, int j, double cj) {
  Vec v = Vec::Zero(n);
  v[i] = ci;
  v[j] = cj;
  return v / v.norm();
}

}  // namespace detail

// Explicit coordinate frames at the reference points, in the same tangent
// coordinate order as the reference quadratics below.
inline FocalFrame reference_frame(So5Kind kind, FocalSide side) {
  using detail::mix_dir;
  using detail::unit_dir;
  FocalFrame fr;
  fr.sign = side == FocalSide::plus ? +1 : -1;
  if (kind == So5Kind::real5) {
    fr.x = reference_point(kind, side);
    if (side == FocalSide::minus) {
      // tangent a13 a14 a15 a23 a24 a25; normal a34 a35 a45
      fr.tangent.resize(10, 6);
      int cols[6] = {1, 2, 3, 4, 5, 6};
      for (int c = 0; c < 6; ++c) fr.tangent.col(c) = unit_dir(10, cols[c]);
      fr.normal.resize(10, 3);
      int ncols[3] = {7, 8, 9};
      for (int c = 0; c < 3; ++c) fr.normal.col(c) = unit_dir(10, ncols[c]);
    } else {
      // tangent x1 x2 y1 y2 z1 z2; normal w0 w1 w2
      fr.tangent.resize(10, 6);
      fr.tangent.col(0) = unit_dir(10, 8);                 // x1 = a35
      fr.tangent.col(1) = unit_dir(10, 9);                 // x2 = a45
      fr.tangent.col(2) = unit_dir(10, 3);                 // y1 = a15
      fr.tangent.col(3) = unit_dir(10, 6);                 // y2 = a25
      fr.tangent.col(4) = mix_dir(10, 2, 1.0, 4, 1.0);     // z1: a14, a23
      fr.tangent.col(5) = mix_dir(10, 1, -1.0, 5, 1.0);    // z2: a13, a24
      fr.normal.resize(10, 3);
      fr.normal.col(0) = mix_dir(10, 0, 1.0, 7, -1.0);     // w0: a12, a34
      fr.normal.col(1) = mix_dir(10, 2, -1.0, 4, 1.0);     // w1: a14, a23
      fr.normal.col(2) = mix_dir(10, 1, 1.0, 5, 1.0);      // w2: a13, a24
    }
    return fr;
  }
  fr.x = reference_point(kind, side);
  if (side == FocalSide::plus) {
    // tangent X1..X5 Y1..Y5 z1..z4; normal w0..w4
    fr.tangent.resize(20, 14);
    fr.tangent.col(0) = unit_dir(20, 8);                  // X1 = x35
    fr.tangent.col(1) = unit_dir(20, 18);                 // X2 = y35
    fr.tangent.col(2) = unit_dir(20, 9);                  // X3 = x45
    fr.tangent.col(3) = unit_dir(20, 19);                 // X4 = y45
    fr.tangent.col(4) = unit_dir(20, 17);                 // X5 = y34
    fr.tangent.col(5) = unit_dir(20, 3);                  // Y1 = x15
    fr.tangent.col(6) = unit_dir(20, 13);                 // Y2 = y15
    fr.tangent.col(7) = unit_dir(20, 6);                  // Y3 = x25
    fr.tangent.col(8) = unit_dir(20, 16);                 // Y4 = y25
    fr.tangent.col(9) = unit_dir(20, 10);                 // Y5 = y12
    fr.tangent.col(10) = mix_dir(20, 12, 1.0, 14, -1.0);  // z1: y14, y23
    fr.tangent.col(11) = mix_dir(20, 2, 1.0, 4, 1.0);     // z2: x14, x23
    fr.tangent.col(12) = mix_dir(20, 11, -1.0, 15, -1.0); // z3: y13, y24
    fr.tangent.col(13) = mix_dir(20, 1, -1.0, 5, 1.0);    // z4: x13, x24
    fr.normal.resize(20, 5);
    fr.normal.col(0) = mix_dir(20, 0, 1.0, 7, -1.0);      // w0: x12, x34
    fr.normal.col(1) = mix_dir(20, 2, -1.0, 4, 1.0);      // w1: x14, x23
    fr.normal.col(2) = mix_dir(20, 12, 1.0, 14, 1.0);     // w2: y14, y23
    fr.normal.col(3) = mix_dir(20, 1, 1.0, 5, 1.0);       // w3: x13, x24
    fr.normal.col(4) = mix_dir(20, 11, -1.0, 15, 1.0);    // w4: y13, y24
  } else {
    // tangent y12 x13 y13 x14 y14 x15 y15 x23 y23 x24 y24 x25 y25;
    // normal x34 x35 x45 y34 y35 y45
    fr.tangent.resize(20, 13);
    int cols[13] = {10, 1, 11, 2, 12, 3, 13, 4, 14, 5, 15, 6, 16};
    for (int c = 0; c < 13; ++c) fr.tangent.col(c) = unit_dir(20, cols[c]);
    fr.normal.resize(20, 6);
    int ncols[6] = {7, 8, 9, 17, 18, 19};
    for (int c = 0; c < 6; ++c) fr.normal.col(c) = unit_dir(20, ncols[c]);
  }
  return fr;
}

// Closed-form shape operator quadratics at the reference points, one
// symmetric matrix per normal direction of reference_frame, in its tangent
// coordinate order.
inline std::vector<Mat> reference_p_forms(So5Kind kind, FocalSide side) {
  auto sym = [](Mat& m, int i, int j, double v) {
    m(i, j) += v / 2;
    m(j, i) += v / 2;
  };
  std::vector<Mat> out;
  const double s2 = std::sqrt(2.0);
  if (kind == So5Kind::real5 && side == FocalSide::minus) {
    // 2(a13 a24 - a14 a23), 2(a13 a25 - a15 a23), 2(a14 a25 - a15 a24)
    for (auto [a, b, c, d] : {std::array<int, 4>{0, 4, 1, 3},
                              std::array<int, 4>{0, 5, 2, 3},
                              std::array<int, 4>{1, 5, 2, 4}}) {
      Mat m = Mat::Zero(6, 6);
      sym(m, a, b, 2.0);
      sym(m, c, d, -2.0);
      out.push_back(m);
    }
    return out;
  }
  if (kind == So5Kind::real5 && side == FocalSide::plus) {
    Mat p0 = Mat::Zero(6, 6);
    p0.diagonal() << 1, 1, -1, -1, 0, 0;  // x1^2 + x2^2 - y1^2 - y2^2
    Mat p1 = Mat::Zero(6, 6);
    sym(p1, 0, 2, 2.0);  // 2 x1 y1
    sym(p1, 1, 3, 2.0);  // 2 x2 y2
    Mat p2 = Mat::Zero(6, 6);
    sym(p2, 1, 2, 2.0);   // 2 x2 y1
    sym(p2, 0, 3, -2.0);  // -2 x1 y2
    return {p0, p1, p2};
  }
  if (kind == So5Kind::complex5 && side == FocalSide::plus) {
    // tangent order X1..X5 (0-4), Y1..Y5 (5-9), z1..z4 (10-13)
    Mat p0 = Mat::Zero(14, 14);
    p0.diagonal() << 1, 1, 1, 1, 1, -1, -1, -1, -1, -1, 0, 0, 0, 0;
    Mat p1 = Mat::Zero(14, 14);
    sym(p1, 0, 5, 2.0); sym(p1, 1, 6, 2.0); sym(p1, 2, 7, 2.0); sym(p1, 3, 8, 2.0);
    sym(p1, 4, 10, s2); sym(p1, 9, 10, s2);
    Mat p2 = Mat::Zero(14, 14);
    sym(p2, 1, 5, 2.0); sym(p2, 0, 6, -2.0); sym(p2, 2, 8, 2.0); sym(p2, 3, 7, -2.0);
    sym(p2, 4, 11, s2); sym(p2, 9, 11, s2);
    Mat p3 = Mat::Zero(14, 14);
    sym(p3, 2, 5, 2.0); sym(p3, 0, 7, -2.0); sym(p3, 3, 6, 2.0); sym(p3, 1, 8, -2.0);
    sym(p3, 4, 12, s2); sym(p3, 9, 12, s2);
    Mat p4 = Mat::Zero(14, 14);
    sym(p4, 3, 5, 2.0); sym(p4, 0, 8, -2.0); sym(p4, 1, 7, 2.0); sym(p4, 2, 6, -2.0);
    sym(p4, 4, 13, s2); sym(p4, 9, 13, s2);
    return {p0, p1, p2, p3, p4};
  }
  // complex, M-: tangent order y12(0) x13(1) y13(2) x14(3) y14(4) x15(5)
  // y15(6) x23(7) y23(8) x24(9) y24(10) x25(11) y25(12)
  {
    Mat p0 = Mat::Zero(13, 13);  // x34
    sym(p0, 1, 9, 2.0); sym(p0, 3, 7, -2.0); sym(p0, 2, 10, -2.0); sym(p0, 4, 8, 2.0);
    Mat p1 = Mat::Zero(13, 13);  // x35
    sym(p1, 1, 11, 2.0); sym(p1, 5, 7, -2.0); sym(p1, 2, 12, -2.0); sym(p1, 6, 8, 2.0);
    Mat p2 = Mat::Zero(13, 13);  // x45
    sym(p2, 3, 11, 2.0); sym(p2, 5, 9, -2.0); sym(p2, 4, 12, -2.0); sym(p2, 6, 10, 2.0);
    Mat p3 = Mat::Zero(13, 13);  // y34
    sym(p3, 1, 10, 2.0); sym(p3, 3, 8, -2.0); sym(p3, 4, 7, -2.0); sym(p3, 2, 9, 2.0);
    Mat p4 = Mat::Zero(13, 13);  // y35
    sym(p4, 1, 12, 2.0); sym(p4, 5, 8, -2.0); sym(p4, 6, 7, -2.0); sym(p4, 2, 11, 2.0);
    Mat p5 = Mat::Zero(13, 13);  // y45
    sym(p5, 3, 12, 2.0); sym(p5, 5, 10, -2.0); sym(p5, 6, 9, -2.0); sym(p5, 4, 11, 2.0);
    return {p0, p1, p2, p3, p4, p5};
  }
}

inline QuarticForm so5_polynomial(So5Kind kind) {
  return kind == So5Kind::real5 ? so5_real_polynomial() : so5_complex_polynomial();
}

struct PFormReport {
  double match_residual = 0;          // after the least-squares basis change
  double orthogonality_residual = 0;  // |R R^T - I|
  bool pass = false;
};

// Extracts the shape operators at the reference frame and matches their span
// against the closed-form quadratics: solve min || vec(S) - vec(P) R^T ||
// column-block-wise, then require small residual and orthogonal R.
inline PFormReport verify_paper_p_forms(So5Kind kind, FocalSide side,
                                        double tol = 1e-7) {
  QuarticForm f = so5_polynomial(kind);
  if (side == FocalSide::minus) f = f.negated();
  FocalFrame raw = reference_frame(kind, side);
  // make_frame re-validates orthonormality and the 2 / -6 values
  FocalFrame frame = make_frame(f, raw.x, raw.tangent, raw.normal, 1e-10, raw.sign);
  ShapeOperatorSet s = second_fundamental_form(f, frame);
  std::vector<Mat> ref = reference_p_forms(kind, side);
  if (ref.size() != static_cast<size_t>(s.count()))
    throw std::runtime_error("verify_paper_p_forms: normal count mismatch");

  const int d = s.n;
  const int k = s.count();
  Mat ms(d * d, k), mp(d * d, k);
  for (int i = 0; i < k; ++i) {
    ms.col(i) = Eigen::Map<const Vec>(s.ops[static_cast<size_t>(i)].data(), d * d);
    mp.col(i) = Eigen::Map<const Vec>(ref[static_cast<size_t>(i)].data(), d * d);
  }
  Mat rt = mp.colPivHouseholderQr().solve(ms);  // S = P * R^T columnwise
  PFormReport rep;
  rep.match_residual = max_abs(Mat(mp * rt - ms));
  Mat r = rt.transpose();
  rep.orthogonality_residual = max_abs(Mat(r * r.transpose() - Mat::Identity(k, k)));
  rep.pass = rep.match_residual <= tol && rep.orthogonality_residual <= tol;
  return rep;
}

}  // namespace isopar
