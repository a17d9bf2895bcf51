#pragma once

#include "weakrev/linalg.hpp"

namespace weakrev {

/// Unit-norm state vector.
class PureState {
 public:
  /// Validates that `amplitudes` has unit norm within tol::kStructural.
  explicit PureState(ComplexVector amplitudes);

  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(const ComplexVector& v);
  static PureState basis(Index d, Index i);

  Index dimension() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  const std::complex<double>& operator()(Index i) const { return amplitudes_(i); }

  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  ComplexVector amplitudes_;
};

/// |⟨a|b⟩|².
double fidelity(const PureState& a, const PureState& b);

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Index d);

  Index dimension() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

PureState random_pure_state(Index d, RandomSource& rng);

/// G·G† / tr(G·G†) for a complex Gaussian d×d matrix G.
DensityMatrix random_density_matrix(Index d, RandomSource& rng);

}  // namespace weakrev
