// Symmetric Clifford systems {P_0,...,P_m} on R^{2l}: P_i symmetric,
// P_i P_j + P_j P_i = 2 delta_ij I, Trace P_i = 0. Built from k irreducible
// summands of anticommuting skew matrices E_1..E_{m-1} with
// E_i E_j + E_j E_i = -2 delta_ij I on R^{delta(m)}. All entries are exact
// integers (0, +-1).
#pragma once

#include <json.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isopar/linalg.hpp"

namespace isopar {

// Dimension of the irreducible module of the Clifford algebra on m-1
// anticommuting skew generators: 1,2,4,4,8,8,8,8 then delta(m+8) = 16 delta(m).
inline int delta(int m) {
  if (m < 1) throw std::invalid_argument("delta: m must be >= 1");
  static const int table[8] = {1, 2, 4, 4, 8, 8, 8, 8};
  std::int64_t scale = 1;
  while (m > 8) {
    m -= 8;
    scale *= 16;
    if (scale > (1 << 20)) throw std::invalid_argument("delta: m too large");
  }
  return static_cast<int>(scale * table[m - 1]);
}

namespace detail {

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// count pairwise anticommuting skew matrices squaring to -I on
// R^{delta(count+1)}. Supported for count <= 10 (enough for m <= 11); the
// next flat step of the delta table would need a different base block.
inline std::vector<Mat> skew_generators(int count) {
  Mat i2 = Mat::Identity(2, 2);
  Mat sg(2, 2), tu(2, 2), ep(2, 2);
  sg << 0, 1, 1, 0;
  tu << 1, 0, 0, -1;
  ep << 0, -1, 1, 0;

  if (count < 0 || count > 10)
    throw std::invalid_argument("skew_generators: count out of supported range");
  if (count == 0) return {};
  if (count == 1) return {ep};
  if (count <= 3) {
    std::vector<Mat> quat = {kron(i2, ep), kron(ep, tu), kron(ep, sg)};
    quat.resize(count);
    return quat;
  }
  if (count <= 7) {
    std::vector<Mat> oct = {
        kron(ep, kron(ep, ep)), kron(i2, kron(sg, ep)), kron(i2, kron(tu, ep)),
        kron(sg, kron(ep, i2)), kron(tu, kron(ep, i2)), kron(ep, kron(i2, sg)),
        kron(ep, kron(i2, tu))};
    oct.resize(count);
    return oct;
  }
  // Doubling: p-1 generators G on R^d give p generators on R^{2d} as
  // {tau (x) G_a} plus {eps (x) I_d}. Exact whenever delta doubles, which
  // holds for every step from count = 8 to count = 10.
  std::vector<Mat> prev = skew_generators(count - 1);
  const int d = static_cast<int>(prev[0].rows());
  std::vector<Mat> out;
  out.reserve(count);
  for (const Mat& g : prev) out.push_back(kron(tu, g));
  out.push_back(kron(ep, Mat::Identity(d, d)));
  return out;
}

}  // namespace detail

struct CliffordSystem {
  int m = 0;
  int l = 0;
  int k = 0;
  std::vector<int> signs;  // one per irreducible summand
  std::vector<Mat> P;      // m+1 symmetric matrices on R^{2l}

  int dim() const { return 2 * l; }
  int m2() const { return l - m - 1; }
  std::pair<int, int> multiplicities() const { return {m, l - m - 1}; }
};

// Assemble the system from k signed copies of the irreducible generators:
// P_0 = diag(I, -I), P_1 = antidiag(I, I), P_{1+i} = [[0, E_i], [-E_i, 0]].
inline CliffordSystem build_clifford_system(int m, int k,
                                            std::vector<int> signs = {}) {
  if (m < 1) throw std::invalid_argument("build_clifford_system: m must be >= 1");
  if (k < 1) throw std::invalid_argument("build_clifford_system: k must be >= 1");
  if (signs.empty()) signs.assign(static_cast<size_t>(k), 1);
  if (static_cast<int>(signs.size()) != k)
    throw std::invalid_argument("build_clifford_system: need one sign per summand");
  for (int s : signs)
    if (s != 1 && s != -1)
      throw std::invalid_argument("build_clifford_system: signs must be +-1");

  const int d = delta(m);
  if (k > 4096 / d) throw std::invalid_argument("build_clifford_system: dimension too large");
  const int l = k * d;
  if (l - m - 1 < 1)
    throw std::invalid_argument("build_clifford_system: degenerate multiplicity m2 = l - m - 1 < 1");

  std::vector<Mat> gen = detail::skew_generators(m - 1);

  CliffordSystem sys;
  sys.m = m;
  sys.l = l;
  sys.k = k;
  sys.signs = std::move(signs);
  sys.P.reserve(static_cast<size_t>(m) + 1);

  Mat p0 = Mat::Zero(2 * l, 2 * l);
  p0.topLeftCorner(l, l) = Mat::Identity(l, l);
  p0.bottomRightCorner(l, l) = -Mat::Identity(l, l);
  sys.P.push_back(p0);

  Mat p1 = Mat::Zero(2 * l, 2 * l);
  p1.topRightCorner(l, l) = Mat::Identity(l, l);
  p1.bottomLeftCorner(l, l) = Mat::Identity(l, l);
  sys.P.push_back(p1);

  for (const Mat& g : gen) {
    Mat e = Mat::Zero(l, l);
    for (int j = 0; j < k; ++j)
      e.block(j * d, j * d, d, d) = sys.signs[static_cast<size_t>(j)] * g;
    Mat p = Mat::Zero(2 * l, 2 * l);
    p.topRightCorner(l, l) = e;
    p.bottomLeftCorner(l, l) = -e;
    sys.P.push_back(p);
  }
  return sys;
}

struct CliffordReport {
  double max_symmetry = 0;       // max |P_i - P_i^T|
  double max_involution = 0;     // max |P_i^2 - I|
  double max_trace = 0;          // max |Trace P_i|
  double max_anticommutator = 0; // max |P_i P_j + P_j P_i - 2 delta_ij I|
  bool pass = false;
};

inline CliffordReport verify_clifford(const CliffordSystem& sys,
                                      double tol = 1e-12) {
  CliffordReport rep;
  const int n = sys.dim();
  const Mat id = Mat::Identity(n, n);
  for (size_t i = 0; i < sys.P.size(); ++i) {
    const Mat& p = sys.P[i];
    if (p.rows() != n || p.cols() != n)
      throw std::invalid_argument("verify_clifford: matrix dimension mismatch");
    rep.max_symmetry = std::max(rep.max_symmetry, max_abs(Mat(p - p.transpose())));
    rep.max_trace = std::max(rep.max_trace, std::abs(p.trace()));
    for (size_t j = i; j < sys.P.size(); ++j) {
      Mat ac = sys.P[i] * sys.P[j] + sys.P[j] * sys.P[i];
      if (i == j) {
        rep.max_involution = std::max(rep.max_involution, max_abs(Mat(0.5 * ac - id)));
      } else {
        rep.max_anticommutator = std::max(rep.max_anticommutator, max_abs(ac));
      }
    }
  }
  rep.pass = rep.max_symmetry <= tol && rep.max_involution <= tol &&
             rep.max_trace <= tol && rep.max_anticommutator <= tol;
  return rep;
}

// Trace(P_0 P_1 ... P_m). Vanishes unless the product is proportional to the
// identity; for m = 4 it equals 2 q delta(4) with integer q, which separates
// the two sign classes of the (m = 4, k = 2) family.
inline double trace_invariant(const CliffordSystem& sys) {
  Mat prod = sys.P[0];
  for (size_t i = 1; i < sys.P.size(); ++i) prod = prod * sys.P[i];
  return prod.trace();
}

// q = Trace(P_0...P_4) / (2 delta(4)); only defined for m = 4.
inline std::optional<double> q_invariant(const CliffordSystem& sys) {
  if (sys.m != 4) return std::nullopt;
  return trace_invariant(sys) / (2.0 * delta(4));
}

// Element of the unit sphere of span{P_0..P_m}; squares to the identity.
inline Mat clifford_sphere_element(const CliffordSystem& sys, const Vec& coeffs) {
  if (coeffs.size() != sys.m + 1)
    throw std::invalid_argument("clifford_sphere_element: need m+1 coefficients");
  if (std::abs(coeffs.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("clifford_sphere_element: coefficients must be unit length");
  Mat p = Mat::Zero(sys.dim(), sys.dim());
  for (int i = 0; i <= sys.m; ++i) p += coeffs[i] * sys.P[i];
  return p;
}

// The m = 9, k = 1 system lives on R^32; its first nine matrices form an
// m = 8 system with l = 16 (so k = 2 relative to delta(8) = 8), and the tenth
// matrix is the extra companion that the nine-matrix system extends to.
struct ExtendedSystem {
  CliffordSystem base;  // m = 8 on R^32
  Mat companion;        // P_9 of the enclosing m = 9 system
};

inline ExtendedSystem build_extended_system() {
  CliffordSystem big = build_clifford_system(9, 1);
  ExtendedSystem out;
  out.companion = big.P.back();
  big.P.pop_back();
  big.m = 8;
  big.k = 2;
  big.signs = {1, 1};
  out.base = std::move(big);
  return out;
}

// --- serialization ----------------------------------------------------------

inline nlohmann::ordered_json matrix_to_json(const Mat& a) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < a.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < a.cols(); ++j) {
      double v = a(i, j);
      double r = std::round(v);
      if (std::abs(v - r) < 1e-12)
        row.push_back(static_cast<std::int64_t>(r));
      else
        row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::ordered_json to_json(const CliffordSystem& sys) {
  nlohmann::ordered_json j;
  j["m"] = sys.m;
  j["l"] = sys.l;
  j["k"] = sys.k;
  j["signs"] = sys.signs;
  nlohmann::ordered_json mats = nlohmann::ordered_json::array();
  for (const Mat& p : sys.P) mats.push_back(matrix_to_json(p));
  j["matrices"] = std::move(mats);
  return j;
}

inline CliffordSystem clifford_from_json(const nlohmann::json& j) {
  CliffordSystem sys;
  sys.m = j.at("m").get<int>();
  sys.l = j.at("l").get<int>();
  sys.k = j.at("k").get<int>();
  sys.signs = j.at("signs").get<std::vector<int>>();
  const auto& mats = j.at("matrices");
  if (!mats.is_array() || static_cast<int>(mats.size()) != sys.m + 1)
    throw std::invalid_argument("clifford_from_json: expected m+1 matrices");
  const int n = 2 * sys.l;
  for (const auto& mj : mats) {
    if (static_cast<int>(mj.size()) != n)
      throw std::invalid_argument("clifford_from_json: matrix dimension mismatch");
    Mat p(n, n);
    for (int i = 0; i < n; ++i) {
      const auto& row = mj.at(static_cast<size_t>(i));
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("clifford_from_json: matrix dimension mismatch");
      for (int c = 0; c < n; ++c) p(i, c) = row.at(static_cast<size_t>(c)).get<double>();
    }
    sys.P.push_back(std::move(p));
  }
  return sys;
}

}  // namespace isopar
