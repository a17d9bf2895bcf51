#include "weakrev/states.hpp"

#include <string>

namespace weakrev {

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("PureState: empty amplitude vector");
  if (!amplitudes_.allFinite()) throw DomainError("PureState: non-finite amplitude");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol::kStructural) {
    throw DomainError("PureState: norm " + std::to_string(norm) + " is not 1");
  }
}

PureState PureState::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("PureState: cannot normalize zero vector");
  return PureState(v / norm);
}

PureState PureState::basis(Index d, Index i) {
  if (d <= 0) throw DimensionError("PureState::basis: dimension must be positive");
  if (i < 0 || i >= d) throw IndexError("PureState::basis: index out of range");
  return PureState(ComplexVector::Unit(d, i));
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("fidelity: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw DimensionError("DensityMatrix: matrix must be square and non-empty");
  }
  if (!matrix_.allFinite()) throw DomainError("DensityMatrix: non-finite entry");
  if ((matrix_ - matrix_.adjoint()).norm() > tol::kStructural) {
    throw DomainError("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - 1.0) > tol::kStructural) {
    throw DomainError("DensityMatrix: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::kStructural) {
    throw DomainError("DensityMatrix: matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
  if (d <= 0) throw DimensionError("DensityMatrix: dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

PureState random_pure_state(Index d, RandomSource& rng) {
  if (d <= 0) throw DimensionError("random_pure_state: dimension must be positive");
  ComplexVector v(d);
  for (Index i = 0; i < d; ++i) v(i) = rng.complex_normal();
  return PureState::normalized(v);
}

DensityMatrix random_density_matrix(Index d, RandomSource& rng) {
  if (d <= 0) throw DimensionError("random_density_matrix: dimension must be positive");
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // exact hermiticity
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix(std::move(rho));
}

}  // namespace weakrev
