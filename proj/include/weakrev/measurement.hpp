#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weakrev/linalg.hpp"
#include "weakrev/states.hpp"

namespace weakrev {

/// One measurement operator A_r with its SVD cached at construction.
class MeasurementOperator {
 public:
  explicit MeasurementOperator(ComplexMatrix matrix);

  Index dimension() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const SvdTriple<double>& svd() const { return svd_; }

  double max_singular_value() const { return svd_.max_value(); }
  double min_singular_value() const { return svd_.min_value(); }
  bool is_zero() const { return svd_.max_value() <= 1e-12; }

  /// A†A.
  ComplexMatrix effect() const { return matrix_.adjoint() * matrix_; }
  /// Σ λ_i |v_i⟩⟨v_i|, so that A = D·U.
  ComplexMatrix diagonal_part() const;
  /// Σ |v_i⟩⟨w_i|.
  ComplexMatrix isometric_part() const;

 private:
  ComplexMatrix matrix_;
  SvdTriple<double> svd_;
};

/// ‖Σ_r A_r†A_r − 1‖_F.
double completeness_residual(std::span<const ComplexMatrix> matrices, Index d);

/// A complete set {A_r} of d×d measurement operators. Outcome indices are 0-based.
class MeasurementSet {
 public:
  static constexpr double kDefaultCompletenessTol = tol::kEquality;

  /// Validates dimensions and completeness; throws DimensionError or CompletenessError.
  MeasurementSet(Index d, std::vector<ComplexMatrix> matrices, double completeness_tol = kDefaultCompletenessTol);

  Index dimension() const { return dimension_; }
  std::size_t size() const { return operators_.size(); }
  const MeasurementOperator& operator[](std::size_t r) const { return operators_[r]; }
  /// Bounds-checked access; throws IndexError.
  const MeasurementOperator& at(std::size_t r) const;
  const std::vector<MeasurementOperator>& operators() const { return operators_; }

  double completeness_residual() const { return completeness_residual_; }
  /// Σ_r Σ_i (λ_i^r)², equal to d for a complete set.
  double singular_value_sum() const;

  /// Same set with every operator replaced by left·A_r·right.
  MeasurementSet transformed(const ComplexMatrix& left, const ComplexMatrix& right) const;

  auto begin() const { return operators_.begin(); }
  auto end() const { return operators_.end(); }

 private:
  Index dimension_;
  std::vector<MeasurementOperator> operators_;
  double completeness_residual_;
};

inline MeasurementSet new_measurement_set(Index d, std::vector<ComplexMatrix> matrices,
                                          double completeness_tol = MeasurementSet::kDefaultCompletenessTol) {
  return MeasurementSet(d, std::move(matrices), completeness_tol);
}

/// p(r, ψ) = ⟨ψ|A_r†A_r|ψ⟩.
double outcome_probability(const MeasurementSet& set, std::size_t r, const PureState& psi);
/// p(r, ρ) = tr(ρ A_r†A_r).
double outcome_probability(const MeasurementSet& set, std::size_t r, const DensityMatrix& rho);

/// A_r|ψ⟩ / √p(r,ψ); throws ZeroProbabilityError when p ≤ 1e-12.
PureState post_measurement_state(const MeasurementSet& set, std::size_t r, const PureState& psi);

struct SampledOutcome {
  std::size_t outcome;
  PureState state;
};

SampledOutcome sample_outcome(const MeasurementSet& set, const PureState& psi, RandomSource& rng);

/// Blocks of the first d columns of an (N·d)-dimensional Haar unitary.
MeasurementSet random_measurement_set(Index d, std::size_t n_outcomes, RandomSource& rng);

/// Rank-one projectors {|i⟩⟨i|}.
MeasurementSet example_von_neumann(Index d);

/// Qubit weak measurement {√η|1⟩⟨1|, |0⟩⟨0| + √(1−η)|1⟩⟨1|}; η = 0 yields the single-outcome identity set.
MeasurementSet example_weak_eta(double eta);

/// d operators A_r = √(a+b)|r⟩⟨r| + √b(1 − |r⟩⟨r|) with b = (1−a)/d, each
/// satisfying A_r†A_r = a|r⟩⟨r| + b·1.
MeasurementSet saturating_measurement_set(Index d, double a);

/// Single-outcome set {U}.
MeasurementSet unitary_measurement(const ComplexMatrix& u);

}  // namespace weakrev
