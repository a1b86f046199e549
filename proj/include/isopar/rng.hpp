// Deterministic random sampling utilities. Every sampling routine in the
// library draws from an explicitly passed Rng so that a (seed, stream) pair
// reproduces the same points regardless of evaluation order or thread count.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <complex>

namespace isopar {

// splitmix64, used to derive independent streams from a base seed.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Independent stream for (seed, tag, index); used for per-point work.
  static Rng derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return Rng(mix64(mix64(seed ^ mix64(tag)) ^ index));
  }

  double gaussian() { return normal_(gen_); }
  double uniform() { return unif_(gen_); }

  Eigen::VectorXd gaussian_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  Eigen::VectorXd unit_vector(int n) {
    Eigen::VectorXd v = gaussian_vector(n);
    double s = v.norm();
    while (s < 1e-12) { v = gaussian_vector(n); s = v.norm(); }
    return v / s;
  }

  Eigen::MatrixXd gaussian_matrix(int r, int c) {
    Eigen::MatrixXd a(r, c);
    for (int j = 0; j < c; ++j)
      for (int i = 0; i < r; ++i) a(i, j) = gaussian();
    return a;
  }

  // Haar-distributed special orthogonal matrix (QR with sign fix).
  Eigen::MatrixXd special_orthogonal(int n) {
    Eigen::MatrixXd a = gaussian_matrix(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
    return q;
  }

  // Haar-distributed unitary matrix (complex QR with phase fix).
  Eigen::MatrixXcd unitary(int n) {
    Eigen::MatrixXcd a(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) a(i, j) = std::complex<double>(gaussian(), gaussian());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      std::complex<double> d = r(j, j);
      double m = std::abs(d);
      if (m > 0) q.col(j) *= d / m;
    }
    return q;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace isopar
