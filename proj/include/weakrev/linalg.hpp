#pragma once

// Dense complex linear algebra shared by every module: SVD with a
// deterministic basis convention, Haar-random unitaries, Kronecker products
// and a handful of residual helpers.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "weakrev/errors.hpp"
#include "weakrev/random.hpp"

namespace weakrev {

using Eigen::Index;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;

/// Tolerances used across the library.
namespace tol {
inline constexpr double kStructural = 1e-10;
inline constexpr double kEquality = 1e-9;
inline constexpr double kSumRule = 1e-8;
}  // namespace tol

/// Singular-value decomposition m = Σ_i λ_i |v_i⟩⟨w_i|.
///
/// Columns of `left` are the |v_i⟩, columns of `right` the |w_i⟩, and
/// `values` is non-increasing.
template <typename Real>
struct SvdTriple {
  CMatrix<Real> left;
  RVector<Real> values;
  CMatrix<Real> right;

  Index size() const { return values.size(); }
  Real max_value() const { return values(0); }
  Real min_value() const { return values(values.size() - 1); }

  CMatrix<Real> reconstruct() const { return left * values.asDiagonal() * right.adjoint(); }
};

namespace detail {

// Lexicographic order on amplitude sequences: real part, then imaginary part,
// component by component. Differences below `eps` count as ties.
template <typename Real>
bool lex_greater(const CVector<Real>& a, const CVector<Real>& b, Real eps) {
  for (Index i = 0; i < a.size(); ++i) {
    const Real dr = a(i).real() - b(i).real();
    if (std::abs(dr) > eps) return dr > 0;
    const Real di = a(i).imag() - b(i).imag();
    if (std::abs(di) > eps) return di > 0;
  }
  return false;
}

// Canonical orthonormal basis of span(basis): Gram-Schmidt applied to the
// projections of canonical basis vectors, pivoting on the earliest index whose
// residual is at least half the largest one. Each resulting vector has a real
// positive entry at its pivot index. The result is sorted lexicographically
// descending so that canonical subspaces come back in index order.
template <typename Real>
CMatrix<Real> canonical_subspace_basis(const CMatrix<Real>& basis) {
  const Index d = basis.rows();
  const Index k = basis.cols();
  const CMatrix<Real> projector = basis * basis.adjoint();
  std::vector<CVector<Real>> accepted;
  accepted.reserve(static_cast<std::size_t>(k));

  for (Index step = 0; step < k; ++step) {
    CMatrix<Real> residuals = projector;
    for (const auto& q : accepted) {
      residuals -= q * (q.adjoint() * residuals);
    }
    // second pass for numerical orthogonality
    for (const auto& q : accepted) {
      residuals -= q * (q.adjoint() * residuals);
    }
    const RVector<Real> norms = residuals.colwise().norm().transpose();
    const Real best = norms.maxCoeff();
    Index pivot = 0;
    while (norms(pivot) < Real(0.5) * best) ++pivot;
    CVector<Real> q = residuals.col(pivot) / norms(pivot);
    const std::complex<Real> p = q(pivot);
    q *= std::conj(p) / std::abs(p);
    accepted.push_back(std::move(q));
  }

  std::stable_sort(accepted.begin(), accepted.end(), [](const CVector<Real>& a, const CVector<Real>& b) {
    return lex_greater<Real>(a, b, Real(1e-12));
  });

  CMatrix<Real> out(d, k);
  for (Index j = 0; j < k; ++j) out.col(j) = accepted[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace detail

/// SVD of a square matrix with a deterministic basis convention.
///
/// Degenerate singular values share a subspace; its basis is canonicalized
/// (see detail::canonical_subspace_basis) so the right vector |w_0⟩ is a
/// well-defined function of the input. Left vectors of nonzero singular
/// values are m|w_i⟩ / λ_i.
template <typename Real>
SvdTriple<Real> svd(const CMatrix<Real>& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("svd: matrix must be square");
  }
  const Index d = m.rows();
  if (d == 0) throw DimensionError("svd: empty matrix");

  Eigen::JacobiSVD<CMatrix<Real>> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdTriple<Real> out;
  out.values = solver.singularValues();
  out.left = solver.matrixU();
  out.right = solver.matrixV();

  const Real scale = std::max(Real(1), out.values(0));
  const Real cluster_eps = Real(1e-11) * scale;
  const Real zero_eps = Real(64) * std::numeric_limits<Real>::epsilon() * scale * Real(d);

  Index begin = 0;
  while (begin < d) {
    Index end = begin + 1;
    while (end < d && out.values(end - 1) - out.values(end) <= cluster_eps) ++end;
    const Index len = end - begin;
    out.right.middleCols(begin, len) = detail::canonical_subspace_basis<Real>(out.right.middleCols(begin, len));
    if (out.values(end - 1) <= zero_eps) {
      out.left.middleCols(begin, len) = detail::canonical_subspace_basis<Real>(out.left.middleCols(begin, len));
    } else {
      for (Index i = begin; i < end; ++i) {
        CVector<Real> v = m * out.right.col(i);
        out.left.col(i) = v / v.norm();
      }
    }
    begin = end;
  }
  return out;
}

template <typename Real>
CMatrix<Real> kron(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Matrix of independent circular complex Gaussians with E|z|² = 1.
template <typename Real = double>
CMatrix<Real> ginibre(Index rows, Index cols, RandomSource& rng) {
  CMatrix<Real> g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      g(i, j) = std::complex<Real>(rng.complex_normal());
    }
  }
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// diag(R) moved into Q.
template <typename Real = double>
CMatrix<Real> haar_unitary(Index d, RandomSource& rng) {
  if (d <= 0) throw DimensionError("haar_unitary: dimension must be positive");
  const CMatrix<Real> z = ginibre<Real>(d, d, rng);
  Eigen::HouseholderQR<CMatrix<Real>> qr(z);
  CMatrix<Real> q = qr.householderQ();
  const CMatrix<Real>& r = qr.matrixQR();
  for (Index i = 0; i < d; ++i) {
    const std::complex<Real> rii = r(i, i);
    const Real mag = std::abs(rii);
    if (mag > 0) q.col(i) *= rii / mag;
  }
  return q;
}

/// ‖m†m − 1‖_F.
template <typename Real>
Real unitarity_residual(const CMatrix<Real>& m) {
  return (m.adjoint() * m - CMatrix<Real>::Identity(m.cols(), m.cols())).norm();
}

/// Orthonormality residual of the columns of a basis matrix.
template <typename Real>
Real orthonormality_residual(const CMatrix<Real>& basis) {
  return unitarity_residual(basis);
}

/// Hermitian square root of a positive semidefinite matrix; negative
/// eigenvalues from round-off are clipped to zero.
template <typename Real>
CMatrix<Real> psd_sqrt(const CMatrix<Real>& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(m);
  RVector<Real> ev = es.eigenvalues().cwiseMax(Real(0)).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace weakrev
