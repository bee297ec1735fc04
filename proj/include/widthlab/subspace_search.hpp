#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "widthlab/errors.hpp"
#include "widthlab/lp_norm.hpp"

namespace widthlab {

/// Orthonormal bases of an n-dimensional subspace L of R^N and of its complement.
struct SubspaceBasis {
  Matrix basis;       // N x n, orthonormal columns spanning L
  Matrix complement;  // N x (N - n), orthonormal columns spanning L^perp

  std::size_t dim() const { return static_cast<std::size_t>(basis.rows()); }
  std::size_t rank() const { return static_cast<std::size_t>(basis.cols()); }
};

/// The span of the columns of a (N x n, full column rank assumed) via a full QR.
inline SubspaceBasis subspace_from(const Matrix& a) {
  const Eigen::Index N = a.rows();
  const Eigen::Index n = a.cols();
  SubspaceBasis out;
  if (n == 0) {
    out.basis = Matrix(N, 0);
    out.complement = Matrix::Identity(N, N);
    return out;
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  const Matrix q = qr.householderQ() * Matrix::Identity(N, N);
  out.basis = q.leftCols(n);
  out.complement = q.rightCols(N - n);
  return out;
}

/// span(e_1, ..., e_n).
inline SubspaceBasis coordinate_subspace(std::size_t N, std::size_t n) {
  SubspaceBasis out;
  const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  out.basis = id.leftCols(static_cast<Eigen::Index>(n));
  out.complement = id.rightCols(static_cast<Eigen::Index>(N - n));
  return out;
}

template <class Rng>
SubspaceBasis random_subspace(std::size_t N, std::size_t n, Rng& rng) {
  std::normal_distribution<double> gauss;
  Matrix a(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = gauss(rng);
  }
  return subspace_from(a);
}

/// Local coordinates around a subspace L0: M in R^{(N-n) x n} maps to
/// span(U0 + U0perp M), re-orthonormalized by QR. M = 0 is L0 itself.
class GrassmannChart {
 public:
  explicit GrassmannChart(SubspaceBasis center) : center_(std::move(center)) {}

  std::size_t coordinate_count() const {
    return static_cast<std::size_t>(center_.basis.cols() * center_.complement.cols());
  }

  SubspaceBasis at(const Vector& coords) const {
    const Eigen::Index n = center_.basis.cols();
    const Eigen::Index m = center_.complement.cols();
    if (n == 0 || m == 0) return center_;
    const Eigen::Map<const Matrix> M(coords.data(), m, n);
    return subspace_from(center_.basis + center_.complement * M);
  }

  const SubspaceBasis& center() const { return center_; }

 private:
  SubspaceBasis center_;
};

/// Seed scrambler so that consecutive restart indices give unrelated streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace widthlab
